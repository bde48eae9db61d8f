#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psdb/blocks.hpp"
#include "psdb/families.hpp"
#include "psdb/rng.hpp"

namespace psdb {

enum class Ensemble {
  ginibre_psd,
  haar_unitary,
  contraction,
  hermitian,
  block_psd,
  ppt_rejection,
  ppt_separable,
  family,
};

/// Seeded description of a random ensemble.
///
/// Recognised params (all optional):
///   real        nonzero: real Gaussian entries instead of complex
///   rank        ginibre_psd (default n), block_psd (default: uniform in
///               1..2n per sample), ppt_rejection and phi/psi parents (2n)
///   norm        contraction spectral norm (default 1)
///   terms       ppt_separable number of product terms (default 2n^2)
///   m           hua: row count of the contractions (default n)
///   max_attempts ppt_rejection candidates per sample (default 1000)
///
/// `fixed_inputs` pins named family inputs ("a", "b", "x", "m11", "u") instead
/// of drawing them.
struct GeneratorSpec {
  Ensemble ensemble = Ensemble::block_psd;
  std::string family;  // canonical family name when ensemble == family
  Eigen::Index n = 3;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::map<std::string, ComplexMatrix> fixed_inputs;
  ToleranceConfig tol;

  /// Parses "block_psd", "family:hua", ... Throws InputError.
  static GeneratorSpec parse(std::string_view ensemble, Eigen::Index n, std::uint64_t seed);

  /// True for ensembles that produce block matrices.
  bool yields_blocks() const;
  /// Stable one-line description recorded in reports.
  std::string describe() const;
  double param(const std::string& key, double fallback) const;
};

std::string_view to_string(Ensemble e);

/// Sample `index` of a matrix ensemble (ginibre_psd, haar_unitary,
/// contraction, hermitian). Throws InputError for block ensembles.
ComplexMatrix sample_matrix(const GeneratorSpec& spec, std::size_t index);

struct BlockSample {
  BlockPsdMatrix block;
  std::size_t index = 0;
  std::uint64_t stream_seed = 0;
  /// Present for family ensembles.
  std::optional<FamilyTags> tags{};
  double condition = 1.0;
  /// Candidates drawn (rejection samplers), otherwise 1.
  std::size_t attempts = 1;
};

/// Sample `index` of a block ensemble, drawn from stream_seed(spec.seed, index).
BlockSample sample_block(const GeneratorSpec& spec, std::size_t index);

/// Regenerates a sample from its recorded stream seed.
BlockSample replay_block(const GeneratorSpec& spec, std::uint64_t stream_seed);

// ---------------------------------------------------------------------------

/// Smallest value seen, with provenance for replay.
struct Extremal {
  double value = 0.0;
  std::size_t index = 0;
  std::uint64_t stream_seed = 0;
  bool set = false;

  void offer(double v, std::size_t idx, std::uint64_t seed);
};

struct RegionStats {
  std::size_t count = 0;
  /// Samples in this region within 10x slack of some boundary.
  std::size_t marginal = 0;
  /// Smallest min-margin over the four Venn properties among region members.
  Extremal min_margin;
};

struct CensusReport {
  std::string spec;
  std::size_t requested = 0;
  /// Successfully classified samples; equals the sum of region counts.
  std::size_t total = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_messages;  // first few
  std::size_t marginal_count = 0;
  std::size_t lattice_violations = 0;
  std::size_t ppt_count = 0;
  /// PPT samples whose lg margin is below -100x slack.
  std::size_t ppt_lg_violations = 0;
  std::map<std::string, RegionStats> regions;
  /// Per-property smallest margin (raw units).
  std::map<Property, Extremal> min_margins;
  /// Per-property smallest margin / slack ratio.
  std::map<Property, Extremal> min_ratios;
};

/// Classifies `count` samples. Classification failures (e.g. geometric-mean
/// convergence) are counted, not fatal. Results are identical for any thread
/// count.
CensusReport census(const GeneratorSpec& spec, std::size_t count, unsigned threads = 1);

/// A violation must exceed this multiple of the comparison slack to count as
/// a counterexample.
inline constexpr double kConfirmFactor = 100.0;

struct Counterexample {
  Property target = Property::la;
  std::size_t index = 0;
  std::uint64_t stream_seed = 0;
  /// 0-based index j (or k) of the first confirmed violation.
  std::size_t violated_index = 0;
  double margin = 0.0;
  double slack = 0.0;
  BlockSample sample;
  PropertyProfile profile;
};

struct SearchResult {
  std::string spec;
  Property target = Property::la;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<Counterexample> counterexample;
  bool found() const { return counterexample.has_value(); }
};

/// Scans samples 0, 1, ... for the first (lowest-index) instance violating
/// `target` by more than kConfirmFactor x slack.
SearchResult find_counterexample(Property target, const GeneratorSpec& spec,
                                 std::size_t max_trials, unsigned threads = 1);

// ---------------------------------------------------------------------------

enum class Conjecture { phi_g, psi_a, psi_g };

std::string_view to_string(Conjecture c);
Conjecture parse_conjecture(std::string_view name);

struct IndexStats {
  double min_margin = 0.0;
  double median_margin = 0.0;
  double min_ratio = 0.0;
  std::size_t argmin_index = 0;
  std::uint64_t argmin_seed = 0;
};

struct ConjectureReport {
  Conjecture id = Conjecture::phi_g;
  std::string spec;
  Eigen::Index n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
  /// Margins below -slack.
  std::size_t violations = 0;
  /// Margins below -kConfirmFactor x slack, with (index, stream seed).
  std::vector<std::pair<std::size_t, std::uint64_t>> confirmed;
  std::vector<IndexStats> per_index;  // empty when count == 0
};

/// Evidence for the open g / a questions of the phi and psi families. Never
/// asserts; reports margin statistics.
ConjectureReport conjecture_run(Conjecture id, Eigen::Index n, std::size_t count,
                                std::uint64_t seed, unsigned threads = 1,
                                const ToleranceConfig& tol = {});

}  // namespace psdb
