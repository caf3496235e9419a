// SPDX-License-Identifier: Apache-2.0
#include "emlattice/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "emlattice/errors.hpp"

namespace emlattice {

using nlohmann::json;

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view src, int dim) : src_(src), dim_(dim) {}

  Polynomial parse() {
    Polynomial out(dim_);
    skip();
    int sign = 1;
    if (peek('+') || peek('-')) {
      sign = src_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    term(out, sign);
    while (true) {
      skip();
      if (pos_ >= src_.size()) break;
      if (peek('+'))
        sign = 1;
      else if (peek('-'))
        sign = -1;
      else
        fail("expected '+' or '-'");
      ++pos_;
      term(out, sign);
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("polynomial: " + what + " at position " + std::to_string(pos_));
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(src_.substr(start, pos_ - start));
  }
  Rational rational() {
    Integer num(digits());
    Integer den = 1;
    if (peek('/')) {
      ++pos_;
      den = Integer(digits());
      if (den == 0) fail("zero denominator");
    }
    return make_rational(num, den);
  }
  void factor(Polynomial::Exponent& e) {
    if (!peek('x')) fail("expected a variable x<k>");
    ++pos_;
    std::size_t at = pos_;
    long k = std::stol(digits());
    if (k < 1 || k > dim_) {
      pos_ = at;
      fail("variable index " + std::to_string(k) + " outside 1.." + std::to_string(dim_));
    }
    long power = 1;
    if (peek('^')) {
      ++pos_;
      std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      power = std::stol(d);
    }
    e[static_cast<std::size_t>(k - 1)] += static_cast<int>(power);
  }
  void term(Polynomial& out, int sign) {
    Rational c = sign;
    Polynomial::Exponent e(static_cast<std::size_t>(dim_), 0);
    skip();
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      c *= rational();
      if (!peek('*')) {
        out.add_term(e, c);
        return;
      }
      ++pos_;
    }
    factor(e);
    while (peek('*')) {
      ++pos_;
      factor(e);
    }
    out.add_term(e, c);
  }

  std::string_view src_;
  int dim_;
  std::size_t pos_ = 0;
};

std::string monomial_text(std::span<const int> e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(i + 1);
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

void append_term(std::string& out, const Rational& c, const std::string& mono) {
  const bool negative = c < 0;
  Rational a = abs(c);
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  if (mono.empty())
    out += to_string(a);
  else if (a == 1)
    out += mono;
  else
    out += to_string(a) + "*" + mono;
}

QVector json_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  QVector v;
  for (const auto& x : j) v.push_back(json_rational(x));
  return v;
}

QMatrix json_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("Q must be a non-empty array of rows");
  std::vector<QVector> rows;
  for (const auto& r : j) rows.push_back(json_vector(r, "Q row"));
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("Q must be square");
  return QMatrix::from_rows(rows, rows.size());
}

json exponent_table(const TruncSeries& s) {
  json terms = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == 0) continue;
    auto e = s.exponents(i);
    terms.push_back({{"exponent", std::vector<int>(e.begin(), e.end())}, {"coeff", to_string(s.at(i))}});
  }
  return terms;
}

json residue_table(const std::vector<std::vector<Rational>>& residues) {
  json out = json::object();
  for (std::size_t r = 0; r < residues.size(); ++r) {
    json row = json::array();
    for (const auto& c : residues[r]) row.push_back(to_string(c));
    out[std::to_string(r)] = row;
  }
  return out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view src, int dim) {
  if (dim < 0) throw DomainError("negative dimension");
  return PolyParser(src, dim).parse();
}

std::string format_polynomial(const Polynomial& p) {
  int deg = p.degree();
  if (deg < 0) return "0";
  return format_series(p.to_series(deg));
}

std::string format_series(const TruncSeries& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == 0) continue;
    append_term(out, s.at(i), monomial_text(s.exponents(i)));
  }
  return out.empty() ? "0" : out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational json_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ParseError("rationals must be strings like \"1/3\" or integers");
}

json rational_json(const Rational& r) { return to_string(r); }

QMatrix parse_q_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("Q file: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("Q")) throw ParseError("Q file has no \"Q\" entry");
    return json_matrix(j["Q"]);
  }
  return json_matrix(j);
}

InputObject parse_input_json(std::string_view text, const std::optional<QMatrix>& q_override) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  InputObject in;
  std::size_t dim = 0;
  if (j.contains("vertices")) {
    in.kind = InputObject::Kind::Polytope;
    if (!j["vertices"].is_array() || j["vertices"].empty())
      throw ParseError("\"vertices\" must be a non-empty array");
    for (const auto& v : j["vertices"]) in.vertices.push_back(json_vector(v, "vertex"));
    dim = in.vertices.front().size();
    for (const auto& v : in.vertices)
      if (v.size() != dim) throw ParseError("vertices have different lengths");
  } else if (j.contains("vertex")) {
    in.kind = InputObject::Kind::Cone;
    in.vertex = json_vector(j["vertex"], "\"vertex\"");
    dim = in.vertex.size();
    if (j.contains("rays")) {
      if (!j["rays"].is_array()) throw ParseError("\"rays\" must be an array");
      for (const auto& r : j["rays"]) {
        in.rays.push_back(json_vector(r, "ray"));
        if (in.rays.back().size() != dim) throw ParseError("ray has the wrong length");
      }
    }
  } else {
    throw ParseError("input needs \"vertices\" (polytope) or \"vertex\" (cone)");
  }
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() != static_cast<long long>(dim))
      throw ParseError("\"dim\" does not match the coordinates");
  }
  std::optional<QMatrix> q = q_override;
  if (!q && j.contains("Q")) q = json_matrix(j["Q"]);
  try {
    if (q) {
      if (q->rows() != dim) throw ParseError("Q has the wrong size");
      in.space = RationalSpace::standard(ScalarProduct(*q));
    } else {
      in.space = RationalSpace::standard(dim);
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("Q: ") + e.what());
  }
  return in;
}

json series_json(const TruncSeries& s) {
  return {{"nvars", s.nvars()}, {"order", s.order()}, {"terms", exponent_table(s)}};
}

json report_json(const Polytope& p, const ContributionReport& r) {
  json faces = json::array();
  for (const auto& f : r.faces) {
    json verts = json::array();
    for (auto v : f.vertices) {
      json coords = json::array();
      for (const auto& x : p.vertices()[v]) coords.push_back(to_string(x));
      verts.push_back(coords);
    }
    faces.push_back({{"face", f.face},
                     {"dim", f.dim},
                     {"vertices", verts},
                     {"nu", to_string(f.nu)},
                     {"contribution", to_string(f.value)}});
  }
  return {{"total", to_string(r.total)}, {"faces", faces}};
}

json ehrhart_json(const EhrhartResult& e) {
  json faces = json::array();
  for (const auto& f : e.faces) {
    faces.push_back({{"face", f.face},
                     {"dim", f.dim},
                     {"vertices", f.vertices},
                     {"period", f.period},
                     {"residues", residue_table(f.residues)}});
  }
  return {{"period", e.quasi.period},
          {"degree", e.quasi.degree},
          {"residues", residue_table(e.quasi.residues)},
          {"faces", faces}};
}

json germ_json(const MeroGerm& g) {
  json den = json::array();
  for (const auto& f : g.denominator()) {
    json v = json::array();
    for (const auto& x : f) v.push_back(to_string(x));
    den.push_back(v);
  }
  return {{"numerator", series_json(g.numerator())}, {"denominator", den}};
}

}  // namespace emlattice
