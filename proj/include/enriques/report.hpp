#pragma once

#include "enriques/datasets.hpp"
#include "enriques/exact_lattice.hpp"
#include "enriques/fiber_classify.hpp"
#include "enriques/sequence_engine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace enriques {

struct RunOptions {
  bool sequences = false;
  bool saturated = false;
  bool extend = false;
  bool fano = false;
  bool timing = false;       // include timings in the output
  bool use_caps = false;
  unsigned threads = 1;
  std::size_t extension_limit = 16; // per saturated sequence, 0 = all
};

struct FibrationRow {
  std::string type;
  std::size_t count;
  RationalVector representative_class;
  friend bool operator==(const FibrationRow &, const FibrationRow &) = default;
};

struct HalfFiberRow {
  std::string type;
  RationalVector half_fiber_class;
  friend bool operator==(const HalfFiberRow &, const HalfFiberRow &) = default;
};

struct CensusEntry {
  std::size_t length;
  std::vector<std::pair<std::string, int>> types;
  std::size_t count;
  friend bool operator==(const CensusEntry &, const CensusEntry &) = default;
};

struct ChainEntry {
  std::size_t base; // half-fiber index
  std::vector<std::string> curves;
  friend bool operator==(const ChainEntry &, const ChainEntry &) = default;
};

struct FanoEntry {
  RationalVector delta;
  std::vector<std::string> contracted;
  std::vector<std::string> singularities;
  friend bool operator==(const FanoEntry &, const FanoEntry &) = default;
};

struct ExtensionEntry {
  std::vector<ChainEntry> chains;
  std::optional<FanoEntry> fano;
  friend bool operator==(const ExtensionEntry &, const ExtensionEntry &) = default;
};

struct ExtensionGroup {
  std::vector<std::size_t> sequence;
  std::vector<ExtensionEntry> extensions;
  bool truncated = false;
  friend bool operator==(const ExtensionGroup &, const ExtensionGroup &) = default;
};

struct RunReport {
  std::string dataset;
  std::vector<std::string> curves;
  std::size_t elliptic_configurations = 0;
  std::vector<FibrationRow> fibrations;
  std::vector<HalfFiberRow> half_fibers;
  int cnd = 0;
  std::size_t maximal_sequences = 0;
  std::vector<std::string> warnings;
  std::optional<std::vector<std::vector<std::size_t>>> sequences;
  std::optional<std::vector<CensusEntry>> saturated;
  std::optional<std::map<std::string, Rational>> phi;
  std::optional<std::vector<ExtensionGroup>> extensions;
  std::map<std::string, std::int64_t> timing_ms; // not part of equality

  std::string nd_statement() const {
    if (cnd >= 10)
      return "nd(S) = 10";
    return "nd(S) \xE2\x89\xA5 " + std::to_string(cnd);
  }
  bool fano_polarization_flag() const { return cnd >= 10; }

  friend bool operator==(const RunReport &a, const RunReport &b) {
    return a.dataset == b.dataset && a.curves == b.curves &&
           a.elliptic_configurations == b.elliptic_configurations &&
           a.fibrations == b.fibrations && a.half_fibers == b.half_fibers &&
           a.cnd == b.cnd && a.maximal_sequences == b.maximal_sequences &&
           a.warnings == b.warnings && a.sequences == b.sequences &&
           a.saturated == b.saturated && a.phi == b.phi &&
           a.extensions == b.extensions;
  }
};

std::map<std::string, Rational> run_phi(const Dataset &d, const HalfFiberSet &hf);

// Full pipeline plus the optional reports.
RunReport run(const Dataset &d, const RunOptions &opt);

// ---- machine-readable form ------------------------------------------------

json to_json(const RunReport &r, bool with_timing = false);

RunReport report_from_json(const json &j);

// ---- human-readable form ----------------------------------------------------

std::string render_text(const RunReport &r, bool with_timing = false);

// ---- overlattice assistant ------------------------------------------------

struct OverlatticeReport {
  std::vector<std::string> labels; // empty when the input is a bare Gram matrix
  IntegerMatrix gram;
  std::vector<Integer> invariant_factors;
  std::vector<RationalVector> isotropic_classes; // curve coordinates if labels set
  bool unimodular() const { return invariant_factors.empty(); }
};

OverlatticeReport run_overlattice(const json &doc);

std::string render_text(const OverlatticeReport &r);

json to_json(const OverlatticeReport &r);

} // namespace enriques
