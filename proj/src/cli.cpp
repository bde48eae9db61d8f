#include "psdb/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "psdb/fixtures.hpp"
#include "psdb/io.hpp"
#include "psdb/search.hpp"

namespace psdb::cli {

namespace {

struct GlobalOptions {
  ToleranceConfig tol;
  std::uint64_t seed = 0;
  std::string json_path;
  unsigned threads = 1;

  unsigned thread_count() const {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

void write_json(const GlobalOptions& g, const Json& j, std::ostream& out) {
  if (!g.json_path.empty()) write_text(g.json_path, j.dump(2) + "\n", out);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError("--param expects key=value, got '" + item + "'");
    }
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw InputError("--param " + item.substr(0, eq) + ": '" + value + "' is not a number");
    }
    params[item.substr(0, eq)] = v;
  }
  return params;
}

void print_profile(const PropertyProfile& p, std::ostream& out) {
  out << "region: " << p.region() << "\n";
  out << "property  verdict  first_violation  worst_ratio  margins\n";
  for (Property q : kAllProperties) {
    const PropertyVerdict& v = p[q];
    const auto first = v.first_violation();
    std::string margins;
    for (std::size_t k = 0; k < v.margins.size(); ++k) {
      margins += (k ? " " : "") + fmt(v.margins[k]);
    }
    char line[128];
    std::snprintf(line, sizeof(line), "%-8s  %-7s  %-15s  %-11s  ", std::string(to_string(q)).c_str(),
                  v.holds ? "holds" : "fails",
                  first ? ("k=" + std::to_string(*first + 1)).c_str() : "-",
                  fmt(v.worst_ratio).c_str());
    out << line << margins << "\n";
  }
  const auto spectrum = [&](const char* name, const Spectrum& s) {
    out << name;
    for (double v : s) out << " " << fmt(v);
    out << "\n";
  };
  spectrum("s(m12):           ", p.offdiag_singular_values);
  spectrum("lambda(m11 + m22):", p.sum_eigenvalues);
  spectrum("lambda(m11 # m22):", p.mean_eigenvalues);
  out << "geometric mean: " << to_string(p.geometric_mean.path) << ", "
      << p.geometric_mean.steps_used << " steps\n";
}

// ---------------------------------------------------------------------------

int cmd_classify(const GlobalOptions& g, const std::string& input, std::ostream& out) {
  const BlockPsdMatrix m = read_block(read_file(input), g.tol);
  const PropertyProfile p = property_profile(m, g.tol);
  out << "n = " << m.n() << ", lambda_min = " << fmt(m.lambda_min())
      << ", ppt = " << (is_ppt(m, g.tol) ? "yes" : "no") << "\n";
  print_profile(p, out);
  Json j = profile_to_json(p);
  j["n"] = m.n();
  j["ppt"] = is_ppt(m, g.tol);
  write_json(g, j, out);
  return kExitOk;
}

struct ConstructOptions {
  std::string family;
  Eigen::Index n = 0;
  std::string inputs;
  std::string output = "-";
  std::vector<std::string> params;
};

int cmd_construct(const GlobalOptions& g, const ConstructOptions& c, std::ostream& out) {
  std::map<std::string, ComplexMatrix> fixed;
  if (!c.inputs.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(c.inputs));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(c.inputs + ": byte " + std::to_string(e.byte), "invalid JSON");
    }
    if (!j.is_object()) throw ParseError(c.inputs, "expected an object of named matrices");
    for (const auto& [key, value] : j.items()) {
      fixed[key] = matrix_from_json(value, "/" + key);
    }
  }
  Eigen::Index n = c.n;
  if (n == 0) n = fixed.empty() ? 3 : fixed.begin()->second.cols();
  GeneratorSpec spec = GeneratorSpec::parse("family:" + c.family, n, g.seed);
  spec.tol = g.tol;
  spec.params = parse_params(c.params);
  spec.fixed_inputs = std::move(fixed);
  const BlockSample s = sample_block(spec, 0);
  write_text(c.output, block_to_json(s.block).dump(2) + "\n", out);
  Json meta;
  meta["family"] = spec.family;
  meta["spec"] = spec.describe();
  meta["stream_seed"] = s.stream_seed;
  if (s.tags) meta["tags"] = tags_to_json(*s.tags);
  meta["condition"] = s.condition;
  meta["block"] = block_to_json(s.block);
  write_json(g, meta, out);
  return kExitOk;
}

int cmd_verify_fixtures(const GlobalOptions& g, std::ostream& out) {
  const std::vector<FixtureGroup> groups = verify_fixtures(g.tol);
  std::vector<std::string> failed;
  Json j = Json::array();
  for (const FixtureGroup& grp : groups) {
    out << "[" << (grp.pass() ? "PASS" : "FAIL") << "] " << grp.name << "\n";
    Json checks = Json::array();
    for (const FixtureCheck& c : grp.checks) {
      char line[256];
      std::snprintf(line, sizeof(line), "  %-4s  %-40s expected %-10s actual %-20s tol %s\n",
                    c.pass ? "ok" : "FAIL", c.label.c_str(), fmt(c.expected).c_str(),
                    format_double(c.actual).c_str(), fmt(c.tol).c_str());
      out << line;
      if (!c.pass) failed.push_back(grp.name + ": " + c.label);
      checks.push_back(Json{{"label", c.label},
                            {"expected", c.expected},
                            {"actual", c.actual},
                            {"tol", c.tol},
                            {"pass", c.pass}});
    }
    j.push_back(Json{{"group", grp.name}, {"pass", grp.pass()}, {"checks", std::move(checks)}});
  }
  write_json(g, j, out);
  if (failed.empty()) {
    out << groups.size() << " fixture groups pass\n";
    return kExitOk;
  }
  out << failed.size() << " checks failed:\n";
  for (const std::string& f : failed) out << "  " << f << "\n";
  return kExitFinding;
}

struct SpecOptions {
  std::string ensemble;
  std::string family;
  Eigen::Index n = 3;
  std::vector<std::string> params;

  GeneratorSpec build(const GlobalOptions& g) const {
    if (!ensemble.empty() && !family.empty()) {
      throw InputError("give either --ensemble or --family, not both");
    }
    const std::string name = !family.empty()  ? "family:" + family
                             : ensemble.empty() ? std::string("block_psd")
                                                : ensemble;
    GeneratorSpec spec = GeneratorSpec::parse(name, n, g.seed);
    spec.tol = g.tol;
    spec.params = parse_params(params);
    if (!spec.yields_blocks()) {
      throw InputError("ensemble '" + name + "' does not produce block matrices");
    }
    return spec;
  }
};

int cmd_census(const GlobalOptions& g, const SpecOptions& s, std::size_t count,
               const std::string& csv, std::ostream& out) {
  const GeneratorSpec spec = s.build(g);
  const CensusReport r = census(spec, count, g.thread_count());
  if (csv.empty()) {
    out << census_to_csv(r);
  } else {
    write_text(csv, census_to_csv(r), out);
    out << "spec: " << r.spec << "\n";
    out << "classified " << r.total << " of " << r.requested << " (" << r.failures
        << " failures), ppt " << r.ppt_count << ", lg violations among ppt "
        << r.ppt_lg_violations << ", lattice violations " << r.lattice_violations << "\n";
    for (const auto& [name, st] : r.regions) out << "  " << name << ": " << st.count << "\n";
  }
  write_json(g, census_to_json(r), out);
  return kExitOk;
}

int cmd_search(const GlobalOptions& g, const SpecOptions& s, const std::string& target,
               std::size_t max_trials, std::ostream& out) {
  const Property p = parse_property(target);
  const GeneratorSpec spec = s.build(g);
  const SearchResult r = find_counterexample(p, spec, max_trials, g.thread_count());
  write_json(g, search_to_json(r), out);
  if (!r.found()) {
    out << "no " << to_string(p) << " counterexample in " << r.trials << " trials (" << r.failures
        << " failures)\n";
    return kExitOk;
  }
  const Counterexample& c = *r.counterexample;
  out << to_string(p) << " counterexample at sample " << c.index << " (stream seed "
      << c.stream_seed << "), index " << c.violated_index + 1 << ", margin "
      << format_double(c.margin) << " (slack " << fmt(c.slack) << ")\n";
  out << block_to_json(c.sample.block).dump() << "\n";
  print_profile(c.profile, out);
  return kExitFinding;
}

int cmd_conjecture(const GlobalOptions& g, const std::string& id, Eigen::Index n,
                   std::size_t count, std::ostream& out) {
  const ConjectureReport r =
      conjecture_run(parse_conjecture(id), n, count, g.seed, g.thread_count(), g.tol);
  out << "conjecture " << to_string(r.id) << ": " << r.spec << "\n";
  out << "draws " << r.count << ", failures " << r.failures << ", violations beyond slack "
      << r.violations << ", confirmed " << r.confirmed.size() << "\n";
  for (std::size_t k = 0; k < r.per_index.size(); ++k) {
    const IndexStats& st = r.per_index[k];
    out << "  j=" << k + 1 << " min_margin " << fmt(st.min_margin) << " median "
        << fmt(st.median_margin) << " min_ratio " << fmt(st.min_ratio) << " (sample "
        << st.argmin_index << ")\n";
  }
  for (const auto& [index, seed] : r.confirmed) {
    out << "CONFIRMED VIOLATION: sample " << index << ", stream seed " << seed << "\n";
  }
  write_json(g, conjecture_to_json(r), out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral properties of 2x2 block positive semidefinite matrices", "psdblocks"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol-atol", g.tol.cmp_atol, "Absolute comparison slack")->capture_default_str();
  app.add_option("--tol-rtol", g.tol.cmp_rtol, "Relative comparison slack")->capture_default_str();
  app.add_option("--psd-tol", g.tol.psd_tol, "PSD eigenvalue floor (relative)")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--json", g.json_path, "Write the JSON report to this path ('-' for stdout)");
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str();

  std::string classify_input;
  CLI::App* classify = app.add_subcommand("classify", "Classify a block-matrix document");
  classify->add_option("input", classify_input, "Block-matrix JSON file")->required();

  ConstructOptions construct_opts;
  CLI::App* construct = app.add_subcommand("construct", "Construct a family instance");
  construct->add_option("family", construct_opts.family, "Family name")->required();
  construct->add_option("--n", construct_opts.n, "Block size (default: from inputs, else 3)");
  construct->add_option("--inputs", construct_opts.inputs,
                        "JSON object of fixed inputs, e.g. {\"m11\": M, \"u\": M}");
  construct->add_option("--output,-o", construct_opts.output, "Output document ('-' for stdout)")
      ->capture_default_str();
  construct->add_option("--param", construct_opts.params, "Generator parameter key=value");

  CLI::App* verify = app.add_subcommand("verify-paper", "Recompute the published fixture values");

  const auto add_spec = [](CLI::App* sub, SpecOptions& s) {
    sub->add_option("--ensemble", s.ensemble, "Block ensemble (default block_psd)");
    sub->add_option("--family", s.family, "Family ensemble");
    sub->add_option("--n", s.n, "Block size")->capture_default_str();
    sub->add_option("--param", s.params, "Generator parameter key=value");
  };

  SpecOptions census_spec;
  std::size_t census_count = 1000;
  std::string census_csv;
  CLI::App* census_cmd = app.add_subcommand("census", "Region counts over an ensemble");
  add_spec(census_cmd, census_spec);
  census_cmd->add_option("--count", census_count, "Samples")->capture_default_str();
  census_cmd->add_option("--csv", census_csv, "Write the CSV report here instead of stdout");

  SpecOptions search_spec;
  std::string search_target;
  std::size_t max_trials = 10000;
  CLI::App* search_cmd = app.add_subcommand("search", "Search for a counterexample");
  add_spec(search_cmd, search_spec);
  search_cmd->add_option("--target", search_target, "Property to violate")->required();
  search_cmd->add_option("--max-trials", max_trials, "Trial budget")->capture_default_str();

  std::string conjecture_id;
  Eigen::Index conjecture_n = 2;
  std::size_t conjecture_count = 10000;
  CLI::App* conjecture_cmd = app.add_subcommand("conjecture", "Evidence for an open question");
  conjecture_cmd->add_option("--id", conjecture_id, "phi_g, psi_a or psi_g")->required();
  conjecture_cmd->add_option("--n", conjecture_n, "Block size")->capture_default_str();
  conjecture_cmd->add_option("--count", conjecture_count, "Draws")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    g.tol.validate();
    if (classify->parsed()) return cmd_classify(g, classify_input, out);
    if (construct->parsed()) return cmd_construct(g, construct_opts, out);
    if (verify->parsed()) return cmd_verify_fixtures(g, out);
    if (census_cmd->parsed()) return cmd_census(g, census_spec, census_count, census_csv, out);
    if (search_cmd->parsed()) return cmd_search(g, search_spec, search_target, max_trials, out);
    if (conjecture_cmd->parsed()) {
      return cmd_conjecture(g, conjecture_id, conjecture_n, conjecture_count, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << " (lambda_min " << format_double(e.lambda_min()) << ")\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace psdb::cli
