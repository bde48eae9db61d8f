#include "psdb/io.hpp"

#include <charconv>
#include <cmath>

namespace psdb {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json re = Json::array();
  Json im = Json::array();
  bool real = true;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
      real = real && m(r, c).imag() == 0.0;
    }
  }
  j["re"] = std::move(re);
  if (!real) j["im"] = std::move(im);
  return j;
}

namespace {

Eigen::Index read_dim(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where, std::string("missing \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(where + "/" + key, "expected a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

std::vector<double> read_reals(const Json& j, const std::string& where, std::size_t expected) {
  if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
  if (j.size() != expected) {
    throw ParseError(where, "expected " + std::to_string(expected) + " entries, got " +
                                std::to_string(j.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(where + "/" + std::to_string(i), "expected a number");
    const double v = j[i].get<double>();
    if (!std::isfinite(v)) throw ParseError(where + "/" + std::to_string(i), "non-finite value");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected a matrix object");
  const Eigen::Index rows = read_dim(j, "rows", where);
  const Eigen::Index cols = read_dim(j, "cols", where);
  const auto count = static_cast<std::size_t>(rows * cols);
  if (!j.contains("re")) throw ParseError(where, "missing \"re\"");
  const std::vector<double> re = read_reals(j.at("re"), where + "/re", count);
  std::vector<double> im(count, 0.0);
  if (j.contains("im")) im = read_reals(j.at("im"), where + "/im", count);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = Complex(re[k], im[k]);
    }
  }
  return m;
}

BlockDocument parse_block_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  if (!j.is_object()) throw ParseError("/", "expected a JSON object");
  BlockDocument doc;
  doc.n = read_dim(j, "n", "");
  for (const char* key : {"m11", "m12", "m22"}) {
    if (!j.contains(key)) throw ParseError("/", std::string("missing \"") + key + "\"");
  }
  doc.m11 = matrix_from_json(j.at("m11"), "/m11");
  doc.m12 = matrix_from_json(j.at("m12"), "/m12");
  doc.m22 = matrix_from_json(j.at("m22"), "/m22");
  for (const auto& [key, m] : {std::pair<const char*, const ComplexMatrix*>{"/m11", &doc.m11},
                               {"/m12", &doc.m12},
                               {"/m22", &doc.m22}}) {
    if (m->rows() != doc.n || m->cols() != doc.n) {
      throw ParseError(key, "expected " + std::to_string(doc.n) + "x" + std::to_string(doc.n));
    }
  }
  return doc;
}

Json block_to_json(const BlockPsdMatrix& m) {
  Json j;
  j["n"] = m.n();
  j["m11"] = matrix_to_json(m.m11().matrix());
  j["m12"] = matrix_to_json(m.m12());
  j["m22"] = matrix_to_json(m.m22().matrix());
  return j;
}

BlockPsdMatrix read_block(std::string_view text, const ToleranceConfig& tol) {
  const BlockDocument doc = parse_block_document(text);
  return BlockPsdMatrix::make(doc.m11, doc.m12, doc.m22, tol);
}

// ---------------------------------------------------------------------------

Json spectrum_to_json(const Spectrum& s) { return Json(s.values()); }

Json profile_to_json(const PropertyProfile& p) {
  Json j;
  j["region"] = p.region();
  Json props = Json::object();
  for (Property q : kAllProperties) {
    const PropertyVerdict& v = p[q];
    Json e;
    e["holds"] = v.holds;
    e["margins"] = v.margins;
    e["slack"] = v.slack;
    e["worst_ratio"] = v.worst_ratio;
    e["worst_index"] = v.worst_index + 1;
    if (const auto k = v.first_violation()) e["first_violation"] = *k + 1;
    props[std::string(to_string(q))] = std::move(e);
  }
  j["properties"] = std::move(props);
  Json spectra;
  spectra["s_m12"] = spectrum_to_json(p.offdiag_singular_values);
  spectra["lambda_sum"] = spectrum_to_json(p.sum_eigenvalues);
  spectra["lambda_gmean"] = spectrum_to_json(p.mean_eigenvalues);
  j["spectra"] = std::move(spectra);
  Json gm;
  gm["path"] = std::string(to_string(p.geometric_mean.path));
  gm["steps_used"] = p.geometric_mean.steps_used;
  gm["final_eps"] = p.geometric_mean.final_eps;
  if (p.geometric_mean.riccati_residual) gm["riccati_residual"] = *p.geometric_mean.riccati_residual;
  j["geometric_mean"] = std::move(gm);
  Json tol;
  tol["cmp_atol"] = p.tol.cmp_atol;
  tol["cmp_rtol"] = p.tol.cmp_rtol;
  tol["psd_tol"] = p.tol.psd_tol;
  tol["hermit_tol"] = p.tol.hermit_tol;
  j["tolerances"] = std::move(tol);
  return j;
}

Json tags_to_json(const FamilyTags& t) {
  Json j;
  j["ppt"] = t.ppt;
  Json props = Json::object();
  for (const auto& [p, e] : t.properties) props[std::string(to_string(p))] = std::string(to_string(e));
  j["properties"] = std::move(props);
  return j;
}

namespace {

Json extremal_to_json(const Extremal& e) {
  Json j;
  if (!e.set) return nullptr;
  j["value"] = e.value;
  j["index"] = e.index;
  j["stream_seed"] = e.stream_seed;
  return j;
}

}  // namespace

Json census_to_json(const CensusReport& r) {
  Json j;
  j["spec"] = r.spec;
  j["requested"] = r.requested;
  j["total"] = r.total;
  j["failures"] = r.failures;
  j["failure_messages"] = r.failure_messages;
  j["marginal_count"] = r.marginal_count;
  j["lattice_violations"] = r.lattice_violations;
  j["ppt_count"] = r.ppt_count;
  j["ppt_lg_violations"] = r.ppt_lg_violations;
  Json regions = Json::object();
  for (const auto& [name, st] : r.regions) {
    Json e;
    e["count"] = st.count;
    e["marginal"] = st.marginal;
    e["min_margin"] = extremal_to_json(st.min_margin);
    regions[name] = std::move(e);
  }
  j["regions"] = std::move(regions);
  Json mins = Json::object();
  for (const auto& [p, e] : r.min_margins) {
    Json entry = extremal_to_json(e);
    if (const auto it = r.min_ratios.find(p); it != r.min_ratios.end()) {
      entry["min_ratio"] = extremal_to_json(it->second);
    }
    mins[std::string(to_string(p))] = std::move(entry);
  }
  j["min_margins"] = std::move(mins);
  return j;
}

std::string census_to_csv(const CensusReport& r) {
  std::string out = "region,count,min_margin,extremal_seed\n";
  for (const auto& [name, st] : r.regions) {
    out += name + "," + std::to_string(st.count) + "," + format_double(st.min_margin.value) + "," +
           std::to_string(st.min_margin.stream_seed) + "\n";
  }
  return out;
}

Json search_to_json(const SearchResult& r) {
  Json j;
  j["spec"] = r.spec;
  j["target"] = std::string(to_string(r.target));
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["found"] = r.found();
  if (r.counterexample) {
    const Counterexample& c = *r.counterexample;
    Json e;
    e["index"] = c.index;
    e["stream_seed"] = c.stream_seed;
    e["violated_index"] = c.violated_index + 1;
    e["margin"] = c.margin;
    e["slack"] = c.slack;
    e["block"] = block_to_json(c.sample.block);
    e["profile"] = profile_to_json(c.profile);
    j["counterexample"] = std::move(e);
  }
  return j;
}

Json conjecture_to_json(const ConjectureReport& r) {
  Json j;
  j["id"] = std::string(to_string(r.id));
  j["spec"] = r.spec;
  j["n"] = r.n;
  j["count"] = r.count;
  j["seed"] = r.seed;
  j["failures"] = r.failures;
  j["violations"] = r.violations;
  Json confirmed = Json::array();
  for (const auto& [index, seed] : r.confirmed) {
    confirmed.push_back(Json{{"index", index}, {"stream_seed", seed}});
  }
  j["confirmed_violations"] = std::move(confirmed);
  Json per = Json::array();
  for (std::size_t k = 0; k < r.per_index.size(); ++k) {
    const IndexStats& s = r.per_index[k];
    per.push_back(Json{{"j", k + 1},
                       {"min_margin", s.min_margin},
                       {"median_margin", s.median_margin},
                       {"min_ratio", s.min_ratio},
                       {"argmin_index", s.argmin_index},
                       {"argmin_seed", s.argmin_seed}});
  }
  j["per_index"] = std::move(per);
  return j;
}

}  // namespace psdb
