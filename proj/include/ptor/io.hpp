#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ptor/automorphism.hpp"
#include "ptor/certificate.hpp"
#include "ptor/dml.hpp"
#include "ptor/homology.hpp"
#include "ptor/padic.hpp"
#include "ptor/surface.hpp"

namespace ptor::io {

using json = nlohmann::ordered_json;

// Scalars serialize as {"p", "val", "unit", "prec"}; "inf" marks the exact
// zero and a "0" unit with prec 0 marks an inexact zero O(p^val).
json scalar_to_json(const PAdic& a);
json scalar_to_json(const mpq_class& q, long p, int prec);
PAdic scalar_from_json(const json& j, const std::string& path);
mpq_class scalar_rational_from_json(const json& j, long expect_p, const std::string& path);

json series_to_json(const Tate& f, int prec);
Tate series_from_json(const json& j, long p, const std::string& path);

json spec_to_json(const AutomorphismSpec& s, int prec);
AutomorphismSpec spec_from_json(const json& j, const std::string& path);

json presentation_to_json(const Presentation& p, int prec);
Presentation presentation_from_json(const json& j, long p_hint, const std::string& path);

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j, const std::string& path);
std::string certificate_table(const Certificate& c);

json support_to_json(const SupportDatum& s);
SupportDatum support_from_json(const json& j, const std::string& path);

struct ProblemFile {
  int schema_version = 1;
  std::string command;
  int prec = 32;
  int r_max = 6;
  std::optional<std::pair<long, long>> window;
  std::string out;    // output path ("" = stdout only)
  std::string format; // "json" | "table"
  json payload;
};

// Schema-validates the whole file; unknown fields are rejected with their
// JSON path.
ProblemFile parse_problem(const std::string& text);

} // namespace ptor::io
