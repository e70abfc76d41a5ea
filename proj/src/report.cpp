#include "enriques/report.hpp"

#include <chrono>
#include <sstream>

namespace enriques {

namespace {

class PhaseTimer {
public:
  explicit PhaseTimer(std::map<std::string, std::int64_t> &out) : out_(out) {}
  void mark(const std::string &phase) {
    auto now = std::chrono::steady_clock::now();
    out_[phase] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now - last_).count();
    last_ = now;
  }

private:
  std::map<std::string, std::int64_t> &out_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::vector<std::string> curve_names(const std::vector<std::size_t> &idx,
                                     const std::vector<std::string> &labels) {
  std::vector<std::string> out;
  for (auto i : idx)
    out.push_back(labels[i]);
  return out;
}

} // namespace

std::map<std::string, Rational> run_phi(const Dataset &d, const HalfFiberSet &hf) {
  if (d.divisors.empty())
    throw input_error("dataset \"" + d.id + "\" has no divisors section");
  std::map<std::string, Rational> out;
  for (const auto &div : d.divisors)
    out[div.name] = phi_invariant(div, hf);
  return out;
}

RunReport run(const Dataset &d, const RunOptions &opt) {
  RunReport rep;
  PhaseTimer timer(rep.timing_ms);
  rep.dataset = d.id;
  rep.curves = d.configuration.labels;

  const HalfFiberSet hf = analyze_fibrations(d.configuration, d.basis, opt.threads);
  timer.mark("fibrations");
  rep.elliptic_configurations = hf.configurations.size();
  for (std::size_t i = 0; i < hf.size(); ++i) {
    const auto &f = hf.fibrations[i];
    rep.half_fibers.push_back({f.type_label, f.half_fiber_class});
    if (rep.fibrations.empty() || rep.fibrations.back().type != f.type_label)
      rep.fibrations.push_back({f.type_label, 0, f.half_fiber_class});
    ++rep.fibrations.back().count;
  }

  const SearchOptions search{opt.use_caps, opt.threads};
  auto counts = sequence_length_counts(hf, search);
  for (std::size_t len = counts.size(); len-- > 0;)
    if (counts[len] > 0) {
      rep.cnd = static_cast<int>(len);
      rep.maximal_sequences = counts[len];
      break;
    }
  if (hf.size() == 0)
    rep.warnings.push_back("no elliptic configurations are supported on the curves; cnd = 0");
  timer.mark("sequences");

  if (opt.sequences) {
    std::vector<std::vector<std::size_t>> all;
    for (auto &s : enumerate_sequences(hf, search))
      all.push_back(std::move(s.members));
    rep.sequences = std::move(all);
  }

  std::optional<SaturationReport> sat;
  if (opt.saturated || opt.extend) {
    sat = saturated(hf, search);
    std::vector<CensusEntry> rows;
    for (const auto &r : sat->census)
      rows.push_back({r.length, r.types, r.count});
    rep.saturated = std::move(rows);
    timer.mark("saturation");
  }

  if (!d.divisors.empty() && hf.size() > 0)
    rep.phi = run_phi(d, hf);

  if (opt.extend) {
    std::vector<ExtensionGroup> groups;
    for (const auto &s : sat->sequences) {
      ExtensionGroup g{s.members, {}, false};
      std::size_t ask = opt.extension_limit ? opt.extension_limit + 1 : 0;
      auto exts = extend_to_canonical(s, hf, ask);
      if (opt.extension_limit && exts.size() > opt.extension_limit) {
        exts.resize(opt.extension_limit);
        g.truncated = true;
      }
      for (const auto &e : exts) {
        ExtensionEntry entry;
        for (std::size_t b = 0; b < e.base_classes.size(); ++b) {
          auto chain = e.chain_of(b);
          if (!chain.empty())
            entry.chains.push_back(
                {s.members[b], curve_names(chain, d.configuration.labels)});
        }
        if (opt.fano) {
          FanoReport f = fano_report(e, d.basis, hf);
          entry.fano = FanoEntry{f.delta,
                                 curve_names(f.contracted_curves,
                                                     d.configuration.labels),
                                 f.singularities};
        }
        g.extensions.push_back(std::move(entry));
      }
      groups.push_back(std::move(g));
    }
    rep.extensions = std::move(groups);
    timer.mark("extensions");
  }
  return rep;
}

json to_json(const RunReport &r, bool with_timing) {
  json j = json::object();
  j["dataset"] = r.dataset;
  j["curves"] = r.curves;
  j["elliptic_configurations"] = r.elliptic_configurations;
  json fib = json::array();
  for (const auto &f : r.fibrations)
    fib.push_back({{"type", f.type},
                   {"count", f.count},
                   {"representative_class", vector_to_json(f.representative_class)}});
  j["fibrations"] = fib;
  json hfs = json::array();
  for (const auto &h : r.half_fibers)
    hfs.push_back({{"type", h.type}, {"class", vector_to_json(h.half_fiber_class)}});
  j["half_fibers"] = hfs;
  j["cnd"] = r.cnd;
  j["maximal_sequences"] = r.maximal_sequences;
  j["nd"] = r.nd_statement();
  j["fano_polarization"] = r.fano_polarization_flag();
  j["warnings"] = r.warnings;
  if (r.sequences)
    j["sequences"] = *r.sequences;
  if (r.saturated) {
    json rows = json::array();
    for (const auto &c : *r.saturated) {
      json types = json::array();
      for (const auto &[t, n] : c.types)
        types.push_back({{"type", t}, {"count", n}});
      rows.push_back({{"length", c.length}, {"types", types}, {"count", c.count}});
    }
    j["saturated"] = rows;
  }
  if (r.phi) {
    json p = json::object();
    for (const auto &[name, v] : *r.phi)
      p[name] = rational_to_json(v);
    j["phi"] = p;
  }
  if (r.extensions) {
    json groups = json::array();
    for (const auto &g : *r.extensions) {
      json list = json::array();
      for (const auto &e : g.extensions) {
        json chains = json::array();
        for (const auto &c : e.chains)
          chains.push_back({{"base", c.base}, {"curves", c.curves}});
        json entry = {{"chains", chains}};
        if (e.fano)
          entry["fano"] = {{"delta", vector_to_json(e.fano->delta)},
                           {"contracted", e.fano->contracted},
                           {"singularities", e.fano->singularities}};
        list.push_back(entry);
      }
      groups.push_back(
          {{"sequence", g.sequence}, {"truncated", g.truncated}, {"extensions", list}});
    }
    j["extensions"] = groups;
  }
  if (with_timing)
    j["timing_ms"] = r.timing_ms;
  return j;
}

RunReport report_from_json(const json &j) {
  try {
    RunReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.curves = j.at("curves").get<std::vector<std::string>>();
    r.elliptic_configurations = j.at("elliptic_configurations").get<std::size_t>();
    for (const auto &f : j.at("fibrations"))
      r.fibrations.push_back({f.at("type").get<std::string>(), f.at("count").get<std::size_t>(),
                              vector_from_json(f.at("representative_class"))});
    for (const auto &h : j.at("half_fibers"))
      r.half_fibers.push_back({h.at("type").get<std::string>(), vector_from_json(h.at("class"))});
    r.cnd = j.at("cnd").get<int>();
    r.maximal_sequences = j.at("maximal_sequences").get<std::size_t>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("sequences"))
      r.sequences = j.at("sequences").get<std::vector<std::vector<std::size_t>>>();
    if (j.contains("saturated")) {
      std::vector<CensusEntry> rows;
      for (const auto &c : j.at("saturated")) {
        CensusEntry e{c.at("length").get<std::size_t>(), {}, c.at("count").get<std::size_t>()};
        for (const auto &t : c.at("types"))
          e.types.emplace_back(t.at("type").get<std::string>(), t.at("count").get<int>());
        rows.push_back(std::move(e));
      }
      r.saturated = std::move(rows);
    }
    if (j.contains("phi")) {
      std::map<std::string, Rational> p;
      for (auto it = j.at("phi").begin(); it != j.at("phi").end(); ++it)
        p[it.key()] = rational_from_json(it.value());
      r.phi = std::move(p);
    }
    if (j.contains("extensions")) {
      std::vector<ExtensionGroup> groups;
      for (const auto &g : j.at("extensions")) {
        ExtensionGroup eg{g.at("sequence").get<std::vector<std::size_t>>(), {},
                          g.at("truncated").get<bool>()};
        for (const auto &e : g.at("extensions")) {
          ExtensionEntry entry;
          for (const auto &c : e.at("chains"))
            entry.chains.push_back({c.at("base").get<std::size_t>(),
                                    c.at("curves").get<std::vector<std::string>>()});
          if (e.contains("fano")) {
            const auto &f = e.at("fano");
            entry.fano = FanoEntry{vector_from_json(f.at("delta")),
                                   f.at("contracted").get<std::vector<std::string>>(),
                                   f.at("singularities").get<std::vector<std::string>>()};
          }
          eg.extensions.push_back(std::move(entry));
        }
        groups.push_back(std::move(eg));
      }
      r.extensions = std::move(groups);
    }
    if (j.contains("timing_ms"))
      r.timing_ms = j.at("timing_ms").get<std::map<std::string, std::int64_t>>();
    return r;
  } catch (const json::exception &e) {
    throw input_error(std::string("malformed report document: ") + e.what());
  }
}

std::string render_text(const RunReport &r, bool with_timing) {
  std::ostringstream out;
  out << "dataset: " << r.dataset << " (" << r.curves.size() << " curves)\n";
  for (const auto &w : r.warnings)
    out << "warning: " << w << "\n";
  out << "elliptic configurations: " << r.elliptic_configurations << "\n";
  out << "elliptic fibrations: " << r.half_fibers.size() << "\n";
  for (const auto &f : r.fibrations)
    out << "  " << f.count << " x (" << f.type << ")  e.g. "
        << format_class(f.representative_class, r.curves) << "\n";
  out << "cnd(S,R) = " << r.cnd << ", realized by " << r.maximal_sequences
      << " sequence" << (r.maximal_sequences == 1 ? "" : "s") << "\n";
  out << r.nd_statement() << "\n";
  if (r.fano_polarization_flag())
    out << "Fano polarization: very ample (nd(S) = 10)\n";
  if (r.saturated) {
    out << "saturated sequences:\n";
    for (const auto &c : *r.saturated) {
      CensusRow row{c.length, c.types, c.count};
      out << "  length " << c.length << ": " << c.count << " x [" << row.types_label()
          << "]\n";
    }
  }
  if (r.sequences) {
    out << "sequences (" << r.sequences->size() << "):\n";
    for (const auto &s : *r.sequences) {
      out << " ";
      for (auto i : s)
        out << " F" << i;
      out << "\n";
    }
  }
  if (r.phi) {
    out << "Phi:\n";
    for (const auto &[name, v] : *r.phi)
      out << "  Phi(" << name << ") = " << to_string(v) << "\n";
  }
  if (r.extensions) {
    out << "canonical extensions of saturated sequences:\n";
    for (const auto &g : *r.extensions) {
      out << "  sequence";
      for (auto i : g.sequence)
        out << " F" << i;
      out << ": " << g.extensions.size() << (g.truncated ? "+" : "")
          << " extension" << (g.extensions.size() == 1 ? "" : "s")
          << " (existence not guaranteed)\n";
      for (const auto &e : g.extensions) {
        out << "   ";
        if (e.chains.empty())
          out << " no chains";
        for (const auto &c : e.chains) {
          out << " F" << c.base << "+";
          for (std::size_t i = 0; i < c.curves.size(); ++i)
            out << (i ? "," : "") << c.curves[i];
        }
        if (e.fano) {
          out << "  | singularities {";
          for (std::size_t i = 0; i < e.fano->singularities.size(); ++i)
            out << (i ? ", " : "") << e.fano->singularities[i];
          out << "}";
        }
        out << "\n";
      }
    }
  }
  if (with_timing && !r.timing_ms.empty()) {
    out << "timing:";
    for (const auto &[phase, ms] : r.timing_ms)
      out << " " << phase << "=" << ms << "ms";
    out << "\n";
  }
  return out.str();
}

OverlatticeReport run_overlattice(const json &doc) {
  OverlatticeReport rep;
  std::vector<RationalVector> generators;
  IntegerMatrix m;
  if (doc.contains("gram")) {
    std::vector<std::vector<Integer>> rows;
    for (const auto &row : doc.at("gram")) {
      std::vector<Integer> r;
      for (const auto &e : row) {
        if (!e.is_number_integer())
          throw input_error("Gram entries must be integers");
        r.push_back(Integer(e.get<long long>()));
      }
      rows.push_back(std::move(r));
    }
    rep.gram = IntegerMatrix::from_rows(rows);
    if (!rep.gram.square())
      throw input_error("Gram matrix is not square");
  } else {
    if (!doc.contains("intersection_matrix") || !doc.contains("generators"))
      throw input_error("overlattice input needs \"gram\", or "
                        "\"intersection_matrix\" with \"generators\"");
    SurfaceDocument shell;
    std::vector<std::vector<Integer>> rows;
    for (const auto &row : doc.at("intersection_matrix")) {
      std::vector<Integer> r;
      for (const auto &e : row) {
        if (!e.is_number_integer())
          throw input_error("intersection numbers must be integers");
        r.push_back(Integer(e.get<long long>()));
      }
      rows.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (doc.contains("curves"))
      labels = doc.at("curves").get<std::vector<std::string>>();
    CurveConfiguration config = load_configuration(IntegerMatrix::from_rows(rows), labels);
    m = config.matrix;
    rep.labels = config.labels;
    for (const auto &g : doc.at("generators")) {
      RationalVector v = vector_from_json(g);
      if (v.size() != config.size())
        throw input_error("generator of the wrong length");
      generators.push_back(std::move(v));
    }
    rep.gram = to_integer(gram(generators, m));
  }
  DiscriminantGroup dg = discriminant_group(rep.gram);
  rep.invariant_factors = dg.invariant_factors;
  for (auto &x : enumerate_isotropic_classes(dg))
    rep.isotropic_classes.push_back(generators.empty() ? x : combine(x, generators));
  return rep;
}

std::string render_text(const OverlatticeReport &r) {
  std::ostringstream out;
  Integer det = determinant(r.gram);
  out << "rank " << r.gram.rows() << ", det " << det << "\n";
  if (r.unimodular()) {
    out << "already unimodular; lattice equals Num(S) candidate\n";
    return out.str();
  }
  out << "discriminant group:";
  for (std::size_t i = 0; i < r.invariant_factors.size(); ++i)
    out << (i ? " x " : " ") << "Z/" << r.invariant_factors[i];
  out << "\n";
  out << "isotropic classes (" << r.isotropic_classes.size()
      << "; representatives with coefficients in [0,1) along the generators):\n";
  std::vector<std::string> names = r.labels;
  if (names.empty())
    for (std::size_t i = 0; i < r.gram.rows(); ++i)
      names.push_back("g" + std::to_string(i + 1));
  for (const auto &x : r.isotropic_classes)
    out << "  " << format_class(x, names) << "\n";
  return out.str();
}

json to_json(const OverlatticeReport &r) {
  json j = json::object();
  json inv = json::array();
  for (const auto &d : r.invariant_factors)
    inv.push_back(rational_to_json(Rational(d)));
  j["invariant_factors"] = inv;
  j["unimodular"] = r.unimodular();
  json iso = json::array();
  for (const auto &x : r.isotropic_classes)
    iso.push_back(vector_to_json(x));
  j["isotropic_classes"] = iso;
  return j;
}

} // namespace enriques
