// SPDX-License-Identifier: Apache-2.0
//
// Text and JSON conversions. Rationals are always written as strings.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "emlattice/ehrhart.hpp"
#include "emlattice/euler_maclaurin.hpp"

namespace emlattice {

// term (('+'|'-') term)*, term = [rational '*'] factor ('*' factor)* | rational,
// factor = 'x' k ['^' e]. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view src, int dim);
std::string format_polynomial(const Polynomial& p);
// Terms in increasing degree, e.g. "1/2 - 1/12*x1 + 1/720*x1^3".
std::string format_series(const TruncSeries& s);

struct InputObject {
  enum class Kind { Polytope, Cone };
  Kind kind = Kind::Polytope;
  RationalSpace space;
  std::vector<QVector> vertices;  // polytope
  QVector vertex;                 // cone
  std::vector<QVector> rays;      // cone
};

// Parses polytope or cone JSON; `q_override` replaces an embedded "Q".
InputObject parse_input_json(std::string_view text, const std::optional<QMatrix>& q_override = {});
// A bare matrix [[...]] or an object {"Q": [[...]]}.
QMatrix parse_q_json(std::string_view text);
std::string read_file(const std::string& path);

Rational json_rational(const nlohmann::json& j);
nlohmann::json rational_json(const Rational& r);
nlohmann::json series_json(const TruncSeries& s);
nlohmann::json report_json(const Polytope& p, const ContributionReport& r);
nlohmann::json ehrhart_json(const EhrhartResult& e);
nlohmann::json germ_json(const MeroGerm& g);

}  // namespace emlattice
