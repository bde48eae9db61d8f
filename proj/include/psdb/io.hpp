#pragma once

// Block-matrix documents and report serialization.
//
// Matrix:   {"rows": r, "cols": c, "re": [row-major reals], "im": [...]}
//           ("im" omitted means real)
// Document: {"n": n, "m11": Matrix, "m12": Matrix, "m22": Matrix}
//
// Doubles are written as the shortest decimal that round-trips binary64.

#include <string>
#include <string_view>

#include <json.hpp>

#include "psdb/blocks.hpp"
#include "psdb/families.hpp"
#include "psdb/search.hpp"

namespace psdb {

using Json = nlohmann::ordered_json;

/// Malformed document; `where` is a JSON-pointer-like location.
class ParseError : public InputError {
 public:
  ParseError(const std::string& where, const std::string& what)
      : InputError(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where);

struct BlockDocument {
  Eigen::Index n = 0;
  ComplexMatrix m11;
  ComplexMatrix m12;
  ComplexMatrix m22;
};

BlockDocument parse_block_document(std::string_view text);
Json block_to_json(const BlockPsdMatrix& m);
/// Parses and validates; ValidationError / ParseError on failure.
BlockPsdMatrix read_block(std::string_view text, const ToleranceConfig& tol = {});

Json spectrum_to_json(const Spectrum& s);
Json profile_to_json(const PropertyProfile& p);
Json tags_to_json(const FamilyTags& t);
Json census_to_json(const CensusReport& r);
/// region,count,min_margin,extremal_seed (plus a header line).
std::string census_to_csv(const CensusReport& r);
Json search_to_json(const SearchResult& r);
Json conjecture_to_json(const ConjectureReport& r);

/// Shortest round-trip decimal of a double.
std::string format_double(double v);

}  // namespace psdb
