// SPDX-License-Identifier: Apache-2.0
#include "emlattice/cli.hpp"

#include <functional>
#include <ostream>
#include <vector>

#include "emlattice/errors.hpp"
#include "emlattice/io.hpp"
#include "emlattice/parallel.hpp"

namespace emlattice::cli {

namespace {

using nlohmann::json;

constexpr int kDefaultMuOrder = 4;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  const JobSpec& job;
  std::ostream& out;
  std::ostream& err;
  MuOptions options;
  bool as_json() const { return job.format == "json"; }
};

InputObject load_input(const JobSpec& job) {
  if (job.input.empty()) throw UsageError("--input is required for " + job.command);
  std::optional<QMatrix> q;
  if (job.q_path) q = parse_q_json(read_file(*job.q_path));
  std::string text = job.input.front() == '{' ? job.input : read_file(job.input);
  return parse_input_json(text, q);
}

Polytope load_polytope(const JobSpec& job) {
  InputObject in = load_input(job);
  if (in.kind != InputObject::Kind::Polytope)
    throw ParseError(job.command + " needs a polytope input with \"vertices\"");
  return build_polytope(in.space, in.vertices);
}

Polynomial load_poly(const JobSpec& job, int dim) {
  Polynomial h = parse_polynomial(job.poly.value_or("1"), dim);
  if (job.order && *job.order < h.degree())
    throw UsageError("--order " + std::to_string(*job.order) + " is below the polynomial degree " +
                     std::to_string(h.degree()));
  return h;
}

std::string point_text(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

void emit(Context& c, const json& j) { c.out << j.dump(2) << '\n'; }

int cmd_count(Context& c) {
  Polytope p = load_polytope(c.job);
  const int d = static_cast<int>(p.space().ambient_dim());
  Rational total = em_sum(p, Polynomial::constant(d, 1), c.options).total;
  if (c.as_json())
    emit(c, {{"count", to_string(total)}});
  else
    c.out << to_string(total) << '\n';
  return kOk;
}

int cmd_sum(Context& c, bool table) {
  Polytope p = load_polytope(c.job);
  Polynomial h = load_poly(c.job, static_cast<int>(p.space().ambient_dim()));
  ContributionReport r = em_sum(p, h, c.options);
  if (c.as_json()) {
    emit(c, report_json(p, r));
    return kOk;
  }
  if (table) {
    for (const auto& f : r.faces) {
      c.out << "face " << f.face << " dim " << f.dim << " vertices";
      for (auto v : f.vertices) c.out << ' ' << point_text(p.vertices()[v]);
      c.out << ": nu = " << to_string(f.nu) << ", contribution = " << to_string(f.value) << '\n';
    }
    c.out << "total = " << to_string(r.total) << '\n';
  } else {
    c.out << to_string(r.total) << '\n';
  }
  return kOk;
}

int cmd_mu(Context& c) {
  InputObject in = load_input(c.job);
  if (in.kind != InputObject::Kind::Cone) throw ParseError("mu needs a cone input with \"vertex\"");
  const int order = c.job.order.value_or(kDefaultMuOrder);
  if (order < 0) throw UsageError("--order must be non-negative");
  AffineCone a(in.space, in.vertex, in.rays);
  TruncSeries s = mu_cone(a, order, c.options);
  if (c.as_json())
    emit(c, {{"order", order}, {"series", series_json(s)}, {"text", format_series(s)}});
  else
    c.out << format_series(s) << '\n';
  return kOk;
}

int cmd_ehrhart(Context& c) {
  Polytope p = load_polytope(c.job);
  Polynomial h = load_poly(c.job, static_cast<int>(p.space().ambient_dim()));
  EhrhartResult e = ehrhart_quasipoly(p, h, c.options);
  if (c.as_json()) {
    emit(c, ehrhart_json(e));
    return kOk;
  }
  c.out << "period " << e.quasi.period << "\ndegree " << e.quasi.degree << '\n';
  for (std::size_t r = 0; r < e.quasi.residues.size(); ++r) {
    c.out << "t = " << r << " mod " << e.quasi.period << ":";
    for (const auto& x : e.quasi.residues[r]) c.out << ' ' << to_string(x);
    c.out << '\n';
  }
  return kOk;
}

int cmd_genfun(Context& c) {
  InputObject in = load_input(c.job);
  const int order = c.job.order.value_or(kDefaultMuOrder);
  if (order < 0) throw UsageError("--order must be non-negative");
  MeroGerm g;
  if (in.kind == InputObject::Kind::Cone) {
    g = s_cone(AffineCone(in.space, in.vertex, in.rays), order, c.options.s_strategy);
  } else {
    Polytope p = build_polytope(in.space, in.vertices);
    g = MeroGerm::analytic(to_analytic(brion_sum_S(p, order, c.options.s_strategy)).truncated(order));
  }
  if (c.as_json()) {
    emit(c, germ_json(g));
    return kOk;
  }
  c.out << "numerator: " << format_series(g.numerator()) << "\ndenominator:";
  if (g.denominator().empty()) c.out << " 1";
  for (const auto& f : g.denominator()) c.out << ' ' << point_text(f);
  c.out << '\n';
  return kOk;
}

struct GoldenCase {
  std::string name;
  std::vector<QVector> vertices;
  std::string poly;
  std::vector<std::string> expected;  // face contributions in report order, then the total
};

int cmd_selftest(Context& c) {
  auto q = [](long n, long d) { return Rational(n, d); };
  std::vector<QVector> tri{{q(1, 3), q(1, 5)}, {q(16, 3), q(1, 7)}, {q(37, 5), q(92, 7)}};
  std::vector<QVector> quad = tri;
  quad.push_back({3, 10});
  std::vector<GoldenCase> cases{
      {"dull triangle x1^20*x2",
       {{0, 0}, {1, 0}, {0, 1}},
       "x1^20*x2",
       {"0", "5131761430387/12155092992", "-28224572717107/66853011456", "0", "-1/252",
        "287696501/133706022912", "1/10626", "0"}},
      {"357 triangle count",
       tri,
       "1",
       {"89133678169939/66088208614500", "-4281800310619/2106396270216",
        "-401172431621091/457987274773000", "1/210", "1/1050", "-1/210", "34187/1050", "31"}},
      {"357 quadrangle count",
       quad,
       "1",
       {"210849514883/127956322980", "-4382929/6869864", "-4281800310619/2106396270216",
        "-179008247/706816180", "1/30", "1/210", "11/35", "-1/210", "699/14", "49"}},
  };
  bool ok = true;
  json results = json::array();
  for (const auto& gc : cases) {
    Polytope p = build_polytope(RationalSpace::standard(2), gc.vertices);
    ContributionReport r = em_sum(p, parse_polynomial(gc.poly, 2), c.options);
    std::vector<std::string> got;
    for (const auto& f : r.faces) got.push_back(to_string(f.value));
    got.push_back(to_string(r.total));
    const bool pass = got == gc.expected;
    ok = ok && pass;
    results.push_back({{"case", gc.name}, {"pass", pass}});
    if (!c.as_json()) c.out << (pass ? "PASS " : "FAIL ") << gc.name << '\n';
  }
  if (c.as_json()) emit(c, {{"pass", ok}, {"cases", results}});
  return ok ? kOk : kInternal;
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.format != "text" && job.format != "json")
      throw UsageError("--format must be text or json");
    if (job.jobs) {
      if (*job.jobs < 1) throw UsageError("--jobs must be at least 1");
      set_jobs(*job.jobs);
    }
    MuCache cache;
    Context c{job, out, err, {}};
    if (job.cache_path) {
      cache.attach_file(*job.cache_path, &err);
      c.options.cache = &cache;
    }
    if (job.command == "count") return cmd_count(c);
    if (job.command == "sum") return cmd_sum(c, false);
    if (job.command == "contributions") return cmd_sum(c, true);
    if (job.command == "mu") return cmd_mu(c);
    if (job.command == "ehrhart") return cmd_ehrhart(c);
    if (job.command == "genfun") return cmd_genfun(c);
    if (job.command == "selftest") return cmd_selftest(c);
    throw UsageError("unknown command '" + job.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CapExceeded& e) {
    err << "compute cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const NotDivisible& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace emlattice::cli
