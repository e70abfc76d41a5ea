#pragma once

#include "enriques/exact_lattice.hpp"
#include "enriques/parallel.hpp"
#include "enriques/surface_model.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace enriques {

struct DynkinTemplate {
  std::string name; // "A1" ... "E8"
  char family;      // 'A', 'D', 'E'
  int rank;
  IntegerMatrix adjacency; // -2 on the diagonal
  std::vector<int> multiplicities;

  std::size_t size() const { return multiplicities.size(); }
  int weight(std::size_t i, std::size_t j) const {
    return static_cast<int>(adjacency(i, j));
  }
};

namespace detail {

inline DynkinTemplate make_template(char family, int rank, std::size_t nodes,
                                    const std::vector<std::pair<int, int>> &edges,
                                    std::vector<int> mult, int edge_weight = 1) {
  IntegerMatrix a(nodes, nodes);
  for (std::size_t i = 0; i < nodes; ++i)
    a(i, i) = -2;
  for (auto [x, y] : edges)
    a(x, y) = a(y, x) = edge_weight;
  return {std::string(1, family) + std::to_string(rank), family, rank,
          std::move(a), std::move(mult)};
}

} // namespace detail

// Affine Dynkin diagrams with Kodaira multiplicities, in catalog order.
inline const std::vector<DynkinTemplate> &catalog() {
  static const std::vector<DynkinTemplate> templates = [] {
    std::vector<DynkinTemplate> t;
    t.push_back(detail::make_template('A', 1, 2, {{0, 1}}, {1, 1}, 2));
    for (int n = 2; n <= 8; ++n) {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i <= n; ++i)
        e.emplace_back(i, (i + 1) % (n + 1));
      t.push_back(detail::make_template('A', n, n + 1, e, std::vector<int>(n + 1, 1)));
    }
    for (int n = 4; n <= 8; ++n) {
      // chain 0..n-4 of multiplicity 2, leaves n-3..n
      const int c = n - 3;
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i + 1 < c; ++i)
        e.emplace_back(i, i + 1);
      e.emplace_back(0, c);
      e.emplace_back(0, c + 1);
      e.emplace_back(c - 1, c + 2);
      e.emplace_back(c - 1, c + 3);
      std::vector<int> m(c, 2);
      m.insert(m.end(), 4, 1);
      t.push_back(detail::make_template('D', n, n + 1, e, m));
    }
    t.push_back(detail::make_template(
        'E', 6, 7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}},
        {1, 2, 3, 2, 1, 2, 1}));
    t.push_back(detail::make_template(
        'E', 7, 8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}},
        {1, 2, 3, 4, 3, 2, 1, 2}));
    t.push_back(detail::make_template(
        'E', 8, 9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 8}},
        {2, 4, 6, 5, 4, 3, 2, 1, 3}));
    return t;
  }();
  return templates;
}

inline std::size_t template_index(const std::string &name) {
  const auto &c = catalog();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].name == name)
      return i;
  throw input_error("unknown Dynkin type \"" + name + "\"");
}

struct EllipticSubset {
  std::size_t template_id;
  std::vector<std::size_t> curves; // curves[t] is matched to template node t
  RationalVector class_vector;

  const DynkinTemplate &dynkin() const { return catalog()[template_id]; }
  std::vector<std::size_t> curve_set() const {
    auto s = curves;
    std::sort(s.begin(), s.end());
    return s;
  }
};

namespace detail {

struct SearchPlan {
  std::vector<std::size_t> order;  // template nodes, root first
  std::vector<std::size_t> parent; // parent[p] is a position < p in order
};

inline SearchPlan plan_from(const DynkinTemplate &t, std::size_t root) {
  SearchPlan p;
  std::vector<bool> seen(t.size(), false);
  p.order.push_back(root);
  p.parent.push_back(0);
  seen[root] = true;
  for (std::size_t head = 0; head < p.order.size(); ++head)
    for (std::size_t v = 0; v < t.size(); ++v)
      if (!seen[v] && t.weight(p.order[head], v) > 0) {
        seen[v] = true;
        p.order.push_back(v);
        p.parent.push_back(head);
      }
  return p;
}

class Matcher {
public:
  explicit Matcher(const CurveConfiguration &config) : k_(config.size()) {
    w_.assign(k_ * k_, 0);
    nbrs_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) {
        w_[i * k_ + j] = i == j ? -2 : config.weight(i, j);
        if (i != j && w_[i * k_ + j] > 0)
          nbrs_[i].push_back(j);
      }
  }

  // All curve sets with minimum element `seed` realizing template t.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>>
  match_seed(const DynkinTemplate &t, const std::vector<SearchPlan> &plans,
             std::size_t seed) const {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> found;
    std::vector<int> degree(t.size(), 0);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b)
        if (a != b && t.weight(a, b) > 0)
          ++degree[a];
    std::vector<int> avail(k_, 0);
    for (std::size_t v = seed; v < k_; ++v)
      for (std::size_t u : nbrs_[v])
        if (u >= seed)
          ++avail[v];

    std::vector<std::size_t> image(t.size());
    std::vector<bool> used(k_, false);
    for (const auto &plan : plans) {
      const std::size_t root = plan.order[0];
      if (avail[seed] < degree[root])
        continue;
      image[root] = seed;
      used[seed] = true;
      extend(t, plan, 1, seed, degree, avail, image, used, found);
      used[seed] = false;
    }
    return found;
  }

private:
  int w(std::size_t i, std::size_t j) const { return w_[i * k_ + j]; }

  void extend(const DynkinTemplate &t, const SearchPlan &plan, std::size_t pos,
              std::size_t seed, const std::vector<int> &degree,
              const std::vector<int> &avail, std::vector<std::size_t> &image,
              std::vector<bool> &used,
              std::map<std::vector<std::size_t>, std::vector<std::size_t>> &found) const {
    if (pos == plan.order.size()) {
      std::vector<std::size_t> key = image;
      std::sort(key.begin(), key.end());
      found.emplace(std::move(key), image);
      return;
    }
    const std::size_t node = plan.order[pos];
    const std::size_t anchor = image[plan.order[plan.parent[pos]]];
    for (std::size_t v : nbrs_[anchor]) {
      if (v < seed || used[v] || avail[v] < degree[node])
        continue;
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        const std::size_t other = plan.order[q];
        ok = w(v, image[other]) == t.weight(node, other);
      }
      if (!ok)
        continue;
      image[node] = v;
      used[v] = true;
      extend(t, plan, pos + 1, seed, degree, avail, image, used, found);
      used[v] = false;
    }
  }

  std::size_t k_;
  std::vector<int> w_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

} // namespace detail

// Every curve subset whose intersection matrix is an affine Dynkin
// diagram. Ordered by catalog, then lexicographically by curve set.
inline std::vector<EllipticSubset>
find_elliptic_subsets(const CurveConfiguration &config, unsigned threads = 1) {
  const auto &cat = catalog();
  const std::size_t k = config.size();
  detail::Matcher matcher(config);

  std::vector<std::vector<detail::SearchPlan>> plans(cat.size());
  for (std::size_t ti = 0; ti < cat.size(); ++ti)
    for (std::size_t r = 0; r < cat[ti].size(); ++r)
      plans[ti].push_back(detail::plan_from(cat[ti], r));

  using Found = std::map<std::vector<std::size_t>, std::vector<std::size_t>>;
  std::vector<Found> slots(cat.size() * k);
  parallel_for(cat.size() * k, threads, [&](std::size_t job) {
    const std::size_t ti = job / k, seed = job % k;
    if (cat[ti].size() <= k)
      slots[job] = matcher.match_seed(cat[ti], plans[ti], seed);
  });

  std::vector<EllipticSubset> out;
  for (std::size_t ti = 0; ti < cat.size(); ++ti)
    for (std::size_t seed = 0; seed < k; ++seed)
      for (auto &[key, image] : slots[ti * k + seed]) {
        EllipticSubset s{ti, image, RationalVector(k, Rational(0))};
        for (std::size_t node = 0; node < image.size(); ++node)
          s.class_vector[image[node]] = cat[ti].multiplicities[node];
        out.push_back(std::move(s));
      }
  return out;
}

} // namespace enriques
