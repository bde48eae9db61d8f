#include "psdb/search.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace psdb {

namespace {

constexpr std::pair<Ensemble, std::string_view> kEnsembleNames[] = {
    {Ensemble::ginibre_psd, "ginibre_psd"},     {Ensemble::haar_unitary, "haar_unitary"},
    {Ensemble::contraction, "contraction"},     {Ensemble::hermitian, "hermitian"},
    {Ensemble::block_psd, "block_psd"},         {Ensemble::ppt_rejection, "ppt_rejection"},
    {Ensemble::ppt_separable, "ppt_separable"}, {Ensemble::family, "family"},
};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Runs fn(i) for i in [begin, end) on up to `threads` workers; result order
// follows i regardless of scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t begin, std::size_t end, unsigned threads, Fn fn) {
  const std::size_t count = end > begin ? end - begin : 0;
  std::vector<T> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(begin + i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = fn(begin + i);
    });
  }
  for (std::thread& t : pool) t.join();
  return out;
}

bool real_entries(const GeneratorSpec& spec) { return spec.param("real", 0.0) != 0.0; }

BlockPsdMatrix split_blocks(const ComplexMatrix& full, Eigen::Index n, const ToleranceConfig& tol) {
  return BlockPsdMatrix::make(full.topLeftCorner(n, n), full.topRightCorner(n, n),
                              full.bottomRightCorner(n, n), tol);
}

ComplexMatrix random_full_psd(Rng& rng, Eigen::Index n, Eigen::Index rank, bool real) {
  return ginibre_psd(rng, 2 * n, rank, real);
}

// PD matrices with condition number above this are redrawn so verification
// stays meaningful.
constexpr double kMaxCondition = 1e8;

ComplexMatrix well_conditioned_pd(Rng& rng, Eigen::Index n, bool real) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    ComplexMatrix m = ginibre_psd(rng, n, n, real);
    const Spectrum s = singular_values(m);
    if (s.min() > 0.0 && s.max() / s.min() <= kMaxCondition) return m;
  }
  throw SamplingError("could not draw a well-conditioned PD matrix in 100 attempts");
}

FamilyInstance draw_family(const GeneratorSpec& spec, Rng& rng) {
  const Eigen::Index n = spec.n;
  const bool real = real_entries(spec);
  const ToleranceConfig& tol = spec.tol;
  auto input = [&spec](const char* key, const std::function<ComplexMatrix()>& draw) {
    const auto it = spec.fixed_inputs.find(key);
    return it != spec.fixed_inputs.end() ? it->second : draw();
  };
  auto psd = [&] { return ginibre_psd(rng, n, n, real); };
  const std::string& f = spec.family;

  if (f == "hua") {
    const auto m = static_cast<Eigen::Index>(spec.param("m", static_cast<double>(n)));
    const double cap = 1.0 - kDefaultHuaMargin;
    for (int attempt = 0; attempt < 100; ++attempt) {
      const ComplexMatrix a = input("a", [&] { return contraction(rng, m, n, cap * rng.uniform(), real); });
      const ComplexMatrix b = input("b", [&] { return contraction(rng, m, n, cap * rng.uniform(), real); });
      FamilyInstance inst = hua(a, b, tol);
      if (inst.condition <= kMaxCondition || spec.fixed_inputs.count("a") != 0) return inst;
    }
    throw SamplingError("hua: could not draw well-conditioned contractions");
  }
  if (f == "phi_block" || f == "psi_block") {
    ComplexMatrix a, x, b;
    if (spec.fixed_inputs.count("a") != 0 && spec.fixed_inputs.count("x") != 0 &&
        spec.fixed_inputs.count("b") != 0) {
      a = spec.fixed_inputs.at("a");
      x = spec.fixed_inputs.at("x");
      b = spec.fixed_inputs.at("b");
    } else {
      const auto rank = static_cast<Eigen::Index>(spec.param("rank", 2.0 * static_cast<double>(n)));
      const ComplexMatrix parent = random_full_psd(rng, n, rank, real);
      a = parent.topLeftCorner(n, n);
      x = parent.topRightCorner(n, n);
      b = parent.bottomRightCorner(n, n);
    }
    return f == "phi_block" ? phi_block(a, x, b, tol) : psi_block(a, x, b, tol);
  }
  if (f == "sym_square") {
    const ComplexMatrix a = input("a", [&] { return random_hermitian(rng, n, real); });
    const ComplexMatrix b = input("b", [&] { return random_hermitian(rng, n, real); });
    return sym_square(a, b, tol);
  }
  if (f == "sum_diff") {
    const ComplexMatrix a = input("a", psd);
    const ComplexMatrix b = input("b", psd);
    return sum_diff(a, b, tol);
  }
  if (f == "unitary_offdiag") {
    const ComplexMatrix m11 = input("m11", [&] { return well_conditioned_pd(rng, n, real); });
    const ComplexMatrix u = input("u", [&] { return haar_unitary(rng, n, real); });
    return unitary_offdiag(m11, u, tol);
  }
  if (f == "norm_weighted") {
    const ComplexMatrix a = input("a", psd);
    const ComplexMatrix b = input("b", psd);
    return norm_weighted(a, b, tol);
  }
  if (f == "gram") {
    return gram(input("a", [&] { return gaussian_matrix(rng, n, n, real); }), tol);
  }
  if (f == "bhatia_kittaneh") {
    const ComplexMatrix a = input("a", psd);
    const ComplexMatrix b = input("b", psd);
    return bhatia_kittaneh(a, b, tol);
  }
  throw InputError("unknown family '" + f + "'");
}

BlockPsdMatrix draw_separable(const GeneratorSpec& spec, Rng& rng) {
  const Eigen::Index n = spec.n;
  const bool real = real_entries(spec);
  const auto terms =
      static_cast<Eigen::Index>(spec.param("terms", 2.0 * static_cast<double>(n * n)));
  ComplexMatrix m11 = ComplexMatrix::Zero(n, n);
  ComplexMatrix m12 = ComplexMatrix::Zero(n, n);
  ComplexMatrix m22 = ComplexMatrix::Zero(n, n);
  for (Eigen::Index t = 0; t < terms; ++t) {
    const ComplexMatrix c = ginibre_psd(rng, 2, 1, real);
    const ComplexMatrix d = ginibre_psd(rng, n, 1, real);
    m11 += c(0, 0) * d;
    m12 += c(0, 1) * d;
    m22 += c(1, 1) * d;
  }
  return BlockPsdMatrix::make(m11, m12, m22, spec.tol);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Ensemble e) {
  for (const auto& [value, name] : kEnsembleNames) {
    if (value == e) return name;
  }
  return "?";
}

GeneratorSpec GeneratorSpec::parse(std::string_view ensemble, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw InputError("ensemble dimension must be positive");
  GeneratorSpec spec;
  spec.n = n;
  spec.seed = seed;
  constexpr std::string_view kFamilyPrefix = "family:";
  if (ensemble.substr(0, kFamilyPrefix.size()) == kFamilyPrefix) {
    spec.ensemble = Ensemble::family;
    spec.family = canonical_family(ensemble.substr(kFamilyPrefix.size()));
    return spec;
  }
  for (const auto& [value, name] : kEnsembleNames) {
    if (name == ensemble && value != Ensemble::family) {
      spec.ensemble = value;
      return spec;
    }
  }
  std::string known;
  for (const auto& [value, name] : kEnsembleNames) {
    known += (known.empty() ? "" : ", ") + std::string(name);
  }
  throw InputError("unknown ensemble '" + std::string(ensemble) + "'; known: " + known +
                   " (family as family:<name>)");
}

bool GeneratorSpec::yields_blocks() const {
  switch (ensemble) {
    case Ensemble::block_psd:
    case Ensemble::ppt_rejection:
    case Ensemble::ppt_separable:
    case Ensemble::family:
      return true;
    default:
      return false;
  }
}

double GeneratorSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string GeneratorSpec::describe() const {
  std::string out = "ensemble=" + std::string(to_string(ensemble));
  if (ensemble == Ensemble::family) out += ":" + family;
  out += " n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  for (const auto& [key, value] : params) out += " " + key + "=" + shortest(value);
  for (const auto& [key, value] : fixed_inputs) out += " fixed:" + key + "=" + digest(value);
  return out;
}

ComplexMatrix sample_matrix(const GeneratorSpec& spec, std::size_t index) {
  Rng rng(stream_seed(spec.seed, index));
  const bool real = real_entries(spec);
  const Eigen::Index n = spec.n;
  switch (spec.ensemble) {
    case Ensemble::ginibre_psd:
      return ginibre_psd(rng, n, static_cast<Eigen::Index>(spec.param("rank", static_cast<double>(n))),
                         real);
    case Ensemble::haar_unitary:
      return haar_unitary(rng, n, real);
    case Ensemble::contraction:
      return contraction(rng, n, n, spec.param("norm", 1.0), real);
    case Ensemble::hermitian:
      return random_hermitian(rng, n, real);
    default:
      throw InputError("ensemble " + std::string(to_string(spec.ensemble)) +
                       " yields block matrices; use sample_block");
  }
}

BlockSample replay_block(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index n = spec.n;
  const bool real = real_entries(spec);
  auto finish = [seed](BlockPsdMatrix block) {
    BlockSample s{.block = std::move(block)};
    s.stream_seed = seed;
    return s;
  };
  switch (spec.ensemble) {
    case Ensemble::block_psd: {
      const double fixed_rank = spec.param("rank", 0.0);
      const Eigen::Index rank = fixed_rank > 0.0 ? static_cast<Eigen::Index>(fixed_rank)
                                                 : rng.uniform_int(1, 2 * n);
      return finish(split_blocks(random_full_psd(rng, n, rank, real), n, spec.tol));
    }
    case Ensemble::ppt_rejection: {
      const auto rank = static_cast<Eigen::Index>(spec.param("rank", 2.0 * static_cast<double>(n)));
      const auto max_attempts = static_cast<std::size_t>(spec.param("max_attempts", 1000.0));
      for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        BlockPsdMatrix candidate = split_blocks(random_full_psd(rng, n, rank, real), n, spec.tol);
        if (is_ppt(candidate, spec.tol)) {
          BlockSample s = finish(std::move(candidate));
          s.attempts = attempt;
          return s;
        }
      }
      throw SamplingError("ppt_rejection: no PPT candidate in " + std::to_string(max_attempts) +
                          " draws (acceptance below 1/" + std::to_string(max_attempts) +
                          ") for " + spec.describe());
    }
    case Ensemble::ppt_separable:
      return finish(draw_separable(spec, rng));
    case Ensemble::family: {
      FamilyInstance inst = draw_family(spec, rng);
      BlockSample s = finish(std::move(inst.block));
      s.tags = std::move(inst.tags);
      s.condition = inst.condition;
      return s;
    }
    default:
      throw InputError("ensemble " + std::string(to_string(spec.ensemble)) +
                       " yields plain matrices; use sample_matrix");
  }
}

BlockSample sample_block(const GeneratorSpec& spec, std::size_t index) {
  BlockSample s = replay_block(spec, stream_seed(spec.seed, index));
  s.index = index;
  return s;
}

// ---------------------------------------------------------------------------

void Extremal::offer(double v, std::size_t idx, std::uint64_t seed) {
  if (!set || v < value) {
    value = v;
    index = idx;
    stream_seed = seed;
    set = true;
  }
}

namespace {

struct TrialSummary {
  bool ok = false;
  std::string error;
  std::uint64_t seed = 0;
  std::string region;
  bool marginal = false;
  bool lattice_ok = true;
  bool ppt = false;
  bool ppt_lg_violation = false;
  std::array<double, 6> min_margin{};
  std::array<double, 6> min_ratio{};
};

}  // namespace

CensusReport census(const GeneratorSpec& spec, std::size_t count, unsigned threads) {
  if (!spec.yields_blocks()) {
    throw InputError("census requires a block ensemble, got " + std::string(to_string(spec.ensemble)));
  }
  CensusReport report;
  report.spec = spec.describe();
  report.requested = count;

  const auto trials = parallel_map<TrialSummary>(0, count, threads, [&spec](std::size_t i) {
    TrialSummary t;
    t.seed = stream_seed(spec.seed, i);
    try {
      const BlockSample s = sample_block(spec, i);
      const PropertyProfile p = property_profile(s.block, spec.tol);
      t.region = p.region();
      for (Property q : kVennProperties) t.marginal = t.marginal || p[q].marginal(10.0);
      t.lattice_ok = lattice_consistent(p);
      t.ppt = is_ppt(s.block, spec.tol);
      t.ppt_lg_violation = t.ppt && p[Property::lg].worst_ratio < -kConfirmFactor;
      for (Property q : kAllProperties) {
        t.min_margin[static_cast<std::size_t>(q)] = p[q].min_margin();
        t.min_ratio[static_cast<std::size_t>(q)] = p[q].worst_ratio;
      }
      t.ok = true;
    } catch (const Error& e) {
      t.error = e.what();
    }
    return t;
  });

  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialSummary& t = trials[i];
    if (!t.ok) {
      ++report.failures;
      if (report.failure_messages.size() < 5) {
        report.failure_messages.push_back("sample " + std::to_string(i) + ": " + t.error);
      }
      continue;
    }
    ++report.total;
    RegionStats& region = report.regions[t.region];
    ++region.count;
    if (t.marginal) {
      ++region.marginal;
      ++report.marginal_count;
    }
    double venn_min = std::numeric_limits<double>::infinity();
    for (Property q : kVennProperties) {
      venn_min = std::min(venn_min, t.min_margin[static_cast<std::size_t>(q)]);
    }
    region.min_margin.offer(venn_min, i, t.seed);
    if (!t.lattice_ok) ++report.lattice_violations;
    if (t.ppt) ++report.ppt_count;
    if (t.ppt_lg_violation) ++report.ppt_lg_violations;
    for (Property q : kAllProperties) {
      report.min_margins[q].offer(t.min_margin[static_cast<std::size_t>(q)], i, t.seed);
      report.min_ratios[q].offer(t.min_ratio[static_cast<std::size_t>(q)], i, t.seed);
    }
  }
  return report;
}

SearchResult find_counterexample(Property target, const GeneratorSpec& spec,
                                 std::size_t max_trials, unsigned threads) {
  if (!spec.yields_blocks()) {
    throw InputError("search requires a block ensemble, got " + std::string(to_string(spec.ensemble)));
  }
  SearchResult result;
  result.spec = spec.describe();
  result.target = target;

  struct Trial {
    bool failed = false;
    std::optional<Counterexample> hit;
  };
  const std::size_t chunk = 64 * std::max(1u, threads);
  for (std::size_t begin = 0; begin < max_trials; begin += chunk) {
    const std::size_t end = std::min(max_trials, begin + chunk);
    auto trials = parallel_map<Trial>(begin, end, threads, [&](std::size_t i) {
      Trial t;
      try {
        BlockSample s = sample_block(spec, i);
        PropertyProfile p = property_profile(s.block, spec.tol);
        const PropertyVerdict& v = p[target];
        for (std::size_t k = 0; k < v.margins.size(); ++k) {
          if (v.margins[k] < -kConfirmFactor * v.slack[k]) {
            t.hit = Counterexample{target, i,           s.stream_seed, k, v.margins[k],
                                   v.slack[k], std::move(s), std::move(p)};
            break;
          }
        }
      } catch (const Error&) {
        t.failed = true;
      }
      return t;
    });
    for (std::size_t j = 0; j < trials.size(); ++j) {
      ++result.trials;
      if (trials[j].failed) ++result.failures;
      if (trials[j].hit) {
        result.counterexample = std::move(trials[j].hit);
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Conjecture c) {
  switch (c) {
    case Conjecture::phi_g: return "phi_g";
    case Conjecture::psi_a: return "psi_a";
    case Conjecture::psi_g: return "psi_g";
  }
  return "?";
}

Conjecture parse_conjecture(std::string_view name) {
  for (Conjecture c : {Conjecture::phi_g, Conjecture::psi_a, Conjecture::psi_g}) {
    if (to_string(c) == name) return c;
  }
  throw InputError("unknown conjecture '" + std::string(name) + "' (expected phi_g, psi_a, psi_g)");
}

ConjectureReport conjecture_run(Conjecture id, Eigen::Index n, std::size_t count,
                                std::uint64_t seed, unsigned threads, const ToleranceConfig& tol) {
  const bool phi = id == Conjecture::phi_g;
  GeneratorSpec spec = GeneratorSpec::parse(phi ? "family:phi_block" : "family:psi_block", n, seed);
  spec.tol = tol;
  const Property target = id == Conjecture::psi_a ? Property::a : Property::g;

  ConjectureReport report;
  report.id = id;
  report.spec = spec.describe();
  report.n = n;
  report.count = count;
  report.seed = seed;

  struct Trial {
    bool ok = false;
    std::uint64_t seed = 0;
    std::vector<double> margins;
    std::vector<double> slack;
  };
  const auto trials = parallel_map<Trial>(0, count, threads, [&](std::size_t i) {
    Trial t;
    t.seed = stream_seed(spec.seed, i);
    try {
      const BlockSample s = sample_block(spec, i);
      const PropertyProfile p = property_profile(s.block, spec.tol);
      t.margins = p[target].margins;
      t.slack = p[target].slack;
      t.ok = true;
    } catch (const Error&) {
    }
    return t;
  });

  const auto dim = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> columns(dim);
  std::vector<Extremal> minima(dim);
  std::vector<Extremal> ratios(dim);
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    if (!t.ok) {
      ++report.failures;
      continue;
    }
    bool violated = false;
    bool confirmed = false;
    for (std::size_t j = 0; j < dim; ++j) {
      columns[j].push_back(t.margins[j]);
      minima[j].offer(t.margins[j], i, t.seed);
      ratios[j].offer(t.margins[j] / t.slack[j], i, t.seed);
      violated = violated || t.margins[j] < -t.slack[j];
      confirmed = confirmed || t.margins[j] < -kConfirmFactor * t.slack[j];
    }
    if (violated) ++report.violations;
    if (confirmed) report.confirmed.emplace_back(i, t.seed);
  }
  if (count == 0 || columns.front().empty()) return report;

  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double>& col = columns[j];
    std::sort(col.begin(), col.end());
    const std::size_t m = col.size();
    IndexStats st;
    st.min_margin = minima[j].value;
    st.median_margin = m % 2 == 1 ? col[m / 2] : 0.5 * (col[m / 2 - 1] + col[m / 2]);
    st.min_ratio = ratios[j].value;
    st.argmin_index = minima[j].index;
    st.argmin_seed = minima[j].stream_seed;
    report.per_index.push_back(st);
  }
  return report;
}

}  // namespace psdb
