#pragma once

#include "enriques/errors.hpp"
#include "enriques/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace enriques {

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw input_error("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix from_rows(const std::vector<std::vector<T>> &rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c)
        throw input_error("row " + std::to_string(i + 1) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(c));
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_,
                          data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  bool symmetric() const {
    if (!square())
      return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i))
          return false;
    return true;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw input_error("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &aik = a(i, k);
        if (aik == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  // row dst += f * row src
  void add_row(std::size_t dst, std::size_t src, const T &f) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += f * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T &f) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += f * (*this)(i, src);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntegerMatrix &m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = Rational(m(i, j));
  return r;
}

// Throws if some entry is not an integer.
inline IntegerMatrix to_integer(const RationalMatrix &m) {
  IntegerMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j)))
        throw input_error("matrix entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ") is not an integer");
      r(i, j) = numerator(m(i, j));
    }
  return r;
}

inline Rational pairing(const RationalVector &x, const RationalVector &y,
                        const IntegerMatrix &m) {
  if (!m.square() || x.size() != m.rows() || y.size() != m.cols())
    throw input_error("pairing dimension mismatch: vectors of length " +
                      std::to_string(x.size()) + " and " +
                      std::to_string(y.size()) + " against a " +
                      std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " matrix");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0)
      continue;
    Rational t = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && m(i, j) != 0)
        t += m(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

inline RationalMatrix gram(const std::vector<RationalVector> &vectors,
                           const IntegerMatrix &m) {
  RationalMatrix g(vectors.size(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i; j < vectors.size(); ++j)
      g(i, j) = g(j, i) = pairing(vectors[i], vectors[j], m);
  return g;
}

inline Rational determinant(RationalMatrix a) {
  if (!a.square())
    throw input_error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r)
      if (a(r, c) != 0)
        a.add_row(r, c, Rational(-a(r, c) / a(c, c)));
  }
  return det;
}

inline Integer determinant(const IntegerMatrix &a) {
  return numerator(determinant(to_rational(a)));
}

inline RationalMatrix inverse(const RationalMatrix &m) {
  if (!m.square())
    throw input_error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m, inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0)
      ++p;
    if (p == n)
      throw input_error("degenerate form");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t r = 0; r < n; ++r)
      if (r != c && a(r, c) != 0) {
        Rational f = -a(r, c);
        a.add_row(r, c, f);
        inv.add_row(r, c, f);
      }
  }
  return inv;
}

struct SmithDecomposition {
  IntegerMatrix left;       // U, rows x rows
  std::vector<Integer> diag; // min(rows, cols) entries
  IntegerMatrix right;      // V, cols x cols

  IntegerMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const {
    IntegerMatrix d(rows, cols);
    for (std::size_t i = 0; i < diag.size(); ++i)
      d(i, i) = diag[i];
    return d;
  }
};

// U * A * V = diag(d1, d2, ...), d_i | d_{i+1}, zeros last.
inline SmithDecomposition smith_normal_form(const IntegerMatrix &input) {
  const std::size_t m = input.rows(), n = input.cols();
  IntegerMatrix a = input;
  IntegerMatrix u = IntegerMatrix::identity(m);
  IntegerMatrix v = IntegerMatrix::identity(n);
  const std::size_t r = std::min(m, n);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer &f) {
    a.add_row(dst, src, f);
    u.add_row(dst, src, f);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer &f) {
    a.add_col(dst, src, f);
    v.add_col(dst, src, f);
  };

  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi == m || abs_int(a(i, j)) < best)) {
            best = abs_int(a(i, j));
            pi = i;
            pj = j;
          }
      if (pi == m)
        break;
      if (pi != t) {
        a.swap_rows(pi, t);
        u.swap_rows(pi, t);
      }
      if (pj != t) {
        a.swap_cols(pj, t);
        v.swap_cols(pj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (a(i, t) != 0) {
          row_op(i, t, Integer(-(a(i, t) / a(t, t))));
          if (a(i, t) != 0)
            clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (a(t, j) != 0) {
          col_op(j, t, Integer(-(a(t, j) / a(t, t))));
          if (a(t, j) != 0)
            clean = false;
        }
      if (!clean)
        continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m)
        break;
      row_op(t, bad, Integer(1));
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j)
        a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < m; ++j)
        u(t, j) = -u(t, j);
    }
  }

  SmithDecomposition out{std::move(u), std::vector<Integer>(r), std::move(v)};
  for (std::size_t i = 0; i < r; ++i)
    out.diag[i] = a(i, i);
  return out;
}

struct DiscriminantGroup {
  std::vector<Integer> invariant_factors;
  std::vector<RationalVector> generator_lifts;
  IntegerMatrix gram;

  Integer order() const {
    Integer o = 1;
    for (const auto &d : invariant_factors)
      o *= d;
    return o;
  }
};

// Lifts are in the coordinates of the basis whose Gram matrix is b.
inline DiscriminantGroup discriminant_group(const IntegerMatrix &b) {
  if (!b.symmetric())
    throw input_error("Gram matrix is not symmetric");
  if (determinant(b) == 0)
    throw input_error("degenerate form");
  SmithDecomposition snf = smith_normal_form(b);
  DiscriminantGroup g;
  g.gram = b;
  // L* = B^-1 Z^n = V D^-1 U Z^n = V D^-1 Z^n
  for (std::size_t i = 0; i < snf.diag.size(); ++i) {
    if (snf.diag[i] == 1)
      continue;
    g.invariant_factors.push_back(snf.diag[i]);
    RationalVector lift(b.rows());
    for (std::size_t k = 0; k < b.rows(); ++k)
      lift[k] = Rational(snf.right(k, i), snf.diag[i]);
    g.generator_lifts.push_back(std::move(lift));
  }
  return g;
}

inline constexpr std::size_t default_discriminant_cap = 1000000;

inline Rational quadratic_value(const RationalVector &x, const IntegerMatrix &b) {
  return pairing(x, x, b);
}

// Nonzero classes x + L with x.x in 2Z, coordinates reduced to [0,1).
inline std::vector<RationalVector>
enumerate_isotropic_classes(const DiscriminantGroup &d,
                            std::size_t cap = default_discriminant_cap) {
  if (d.order() > cap)
    throw input_error("discriminant group too large (order " +
                      d.order().str() + ")");
  const std::size_t r = d.invariant_factors.size();
  const std::size_t n = d.gram.rows();
  std::vector<RationalVector> out;
  if (r == 0)
    return out;
  std::vector<Integer> a(r, 0);
  for (;;) {
    std::size_t pos = 0;
    while (pos < r) {
      if (++a[pos] < d.invariant_factors[pos])
        break;
      a[pos] = 0;
      ++pos;
    }
    if (pos == r)
      break;
    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
      if (a[i] != 0)
        for (std::size_t k = 0; k < n; ++k)
          x[k] += a[i] * d.generator_lifts[i][k];
    for (auto &c : x)
      c = frac(c);
    Rational q = quadratic_value(x, d.gram);
    if (is_integer(q) && numerator(q) % 2 == 0)
      out.push_back(std::move(x));
  }
  return out;
}

// Coordinates of x along a Q-basis of generators (solves G c = (x . g_j)).
inline RationalVector lattice_coordinates(const RationalVector &x,
                                          const std::vector<RationalVector> &generators,
                                          const IntegerMatrix &m) {
  RationalMatrix g = gram(generators, m);
  RationalMatrix inv = inverse(g);
  RationalVector rhs(generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j)
    rhs[j] = pairing(x, generators[j], m);
  RationalVector c(generators.size(), Rational(0));
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < generators.size(); ++j)
      c[i] += inv(i, j) * rhs[j];
  return c;
}

inline RationalVector combine(const RationalVector &coeffs,
                              const std::vector<RationalVector> &generators) {
  if (generators.empty())
    return {};
  RationalVector out(generators.front().size(), Rational(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0)
      for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += coeffs[i] * generators[i][k];
  return out;
}

} // namespace enriques
