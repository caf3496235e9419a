// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "emlattice/io.hpp"
#include "emlattice/mu.hpp"
#include "oracles.hpp"

using namespace emlattice;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("emlattice_test_" + name);
  std::filesystem::remove(p);
  return p;
}

AffineCone cone357() {
  return AffineCone(RationalSpace::standard(2), QVector{Rational(16, 3), Rational(1, 7)},
                    {QVector{1, 0}, QVector{2, 5}});
}

}  // namespace

TEST_CASE("half-line at the origin") {
  AffineCone h(RationalSpace::standard(1), QVector{0}, {QVector{1}});
  CHECK(format_series(mu_cone(h, 3)) == "1/2 - 1/12*x1 + 1/720*x1^3");
}

TEST_CASE("half-line closed form uses the distance to the next integer") {
  auto c = mu_dim1_closed(Rational(1, 3), 3);
  // t = 2/3: -b(n+1, t)/(n+1)!.
  Rational t(2, 3);
  for (unsigned n = 0; n <= 3; ++n)
    CHECK(c[n] == -oracle::bernoulli_poly(n + 1, t) / Rational(factorial(n + 1)));
}

TEST_CASE("a point cone") {
  RationalSpace plane = RationalSpace::standard(2);
  CHECK(mu_cone(AffineCone(plane, QVector{1, 2}, {}), 2) == TruncSeries::constant(2, 2, 1));
  CHECK(mu_cone(AffineCone(plane, QVector{Rational(1, 2), 2}, {}), 2).is_zero());
}

TEST_CASE("unimodular plane cone value at zero") {
  AffineCone u(RationalSpace::standard(2), QVector{0, 0}, {QVector{1, 0}, QVector{1, 1}});
  CHECK(mu_cone(u, 0).constant_term() == Rational(3, 8));
  CHECK(mu_dim2_value0(u) == Rational(3, 8));
  // Standard orthant: mu is the product of two half-line series.
  AffineCone o(RationalSpace::standard(2), QVector{0, 0}, {QVector{1, 0}, QVector{0, 1}});
  CHECK(mu_cone(o, 0).constant_term() == Rational(1, 4));
}

TEST_CASE("strategies agree") {
  MuOptions rec, dec;
  rec.strategy = MuStrategy::Recursion;
  dec.strategy = MuStrategy::Decomposition;
  for (const auto& a :
       {cone357(), AffineCone(RationalSpace::standard(3), QVector{Rational(1, 2), 0, Rational(1, 3)},
                              {QVector{1, 0, 0}, QVector{1, 2, 0}, QVector{0, 1, 3}})}) {
    const int order = a.space().dim() == 2 ? 4 : 2;
    TruncSeries r = mu_cone(a, order, rec);
    CHECK(r == mu_cone(a, order, dec));
    CHECK(r == mu_cone(a, order));
  }
}

TEST_CASE("non-standard scalar product changes mu") {
  std::vector<QVector> q_rows{{2, 1}, {1, 2}};
  RationalSpace skew = RationalSpace::standard(ScalarProduct(QMatrix::from_rows(q_rows, 2)));
  AffineCone a(skew, QVector{Rational(1, 2), 0}, {QVector{1, 0}, QVector{2, 5}});
  AffineCone b(RationalSpace::standard(2), a.vertex(), a.rays());
  CHECK(mu_cone(a, 0) != mu_cone(b, 0));
  CHECK(mu_cone(a, 0).constant_term() == mu_dim2_value0(a));
}

TEST_CASE("Dedekind sums") {
  CHECK(dedekind_sum(1, 1, 0) == oracle::dedekind_cyclotomic(1, 1, 0));
  CHECK(dedekind_sum(5, 2, 3) == oracle::dedekind_cyclotomic(5, 2, 3));
  CHECK(dedekind_sum(7, -3, 0) == oracle::dedekind_cyclotomic(7, -3, 0));
  CHECK_THROWS(dedekind_sum(6, 2, 1));
}

TEST_CASE("mu_star of trivial and one-dimensional sigma") {
  RationalSpace line = RationalSpace::standard(1);
  QVector s{Rational(2, 5)};
  CHECK(mu_star(line, {}, s, 3) == TruncSeries::constant(1, 3, 1));
  CHECK(mu_star(line, {QVector{1}}, s, 3) == mu_cone(AffineCone(line, s, {QVector{1}}), 3));
  // sigma a full line: the dual cone is the single point s.
  CHECK(mu_star(line, {QVector{1}, QVector{-1}}, s, 3) == mu_cone(AffineCone(line, s, {}), 3));
  CHECK(mu_star(line, {QVector{1}, QVector{-1}}, QVector{3}, 3) == TruncSeries::constant(1, 3, 1));
}

TEST_CASE("mu_star is additive over subdivisions of sigma") {
  std::mt19937 rng(17);
  std::vector<QVector> q_rows{{2, 1}, {1, 3}};
  for (int trial = 0; trial < 20; ++trial) {
    RationalSpace space = trial % 2 ? RationalSpace::standard(2)
                                    : RationalSpace::standard(ScalarProduct(QMatrix::from_rows(q_rows, 2)));
    QVector u, v;
    do {
      u = oracle::random_primitive(rng, 2, 4);
      v = oracle::random_primitive(rng, 2, 4);
    } while (u[0] * v[1] - u[1] * v[0] == 0);
    std::uniform_int_distribution<long> c(1, 3);
    QVector w = primitive_integer(add(scale(u, c(rng)), scale(v, c(rng))));
    QVector s{oracle::random_rational(rng, 3, 6), oracle::random_rational(rng, 3, 6)};
    const int order = 3;
    TruncSeries whole = mu_star(space, {u, v}, s, order);
    TruncSeries parts = mu_star(space, {u, w}, s, order) + mu_star(space, {w, v}, s, order);
    CHECK(whole == parts);
  }
}

TEST_CASE("vertex canonicalization only skips work") {
  AffineCone a = cone357();
  AffineCone shifted(a.space(), add(a.vertex(), QVector{-7, 12}), a.rays());
  MuOptions raw;
  raw.canonical_vertex = false;
  CHECK(mu_cone(a, 3, raw) == mu_cone(shifted, 3, raw));
  CHECK(mu_cone(a, 3) == mu_cone(shifted, 3, raw));
}

TEST_CASE("cache hits and order truncation") {
  MuCache cache;
  MuOptions o;
  o.cache = &cache;
  AffineCone a = cone357();
  TruncSeries high = mu_cone(a, 4, o);
  const std::size_t n = cache.size();
  CHECK(n > 0);
  TruncSeries low = mu_cone(a, 2, o);
  CHECK(low == high.truncated(2));
  CHECK(cache.size() == n);
  CHECK(cache.hits() > 0);
  // Lattice translates share the cache entry.
  AffineCone shifted(a.space(), add(a.vertex(), QVector{3, -1}), a.rays());
  CHECK(mu_cone(shifted, 4, o) == high);
  CHECK(cache.size() == n);
}

TEST_CASE("cache file round trip") {
  auto path = temp_file("roundtrip.cache");
  AffineCone a = cone357();
  TruncSeries cold;
  {
    MuCache cache;
    std::ostringstream warn;
    cache.attach_file(path.string(), &warn);
    MuOptions o;
    o.cache = &cache;
    cold = mu_cone(a, 4, o);
    CHECK(warn.str().empty());
  }
  MuCache warm;
  std::ostringstream warn;
  warm.attach_file(path.string(), &warn);
  CHECK(warn.str().empty());
  CHECK(warm.size() > 0);
  MuOptions o;
  o.cache = &warm;
  const std::size_t before = warm.size();
  CHECK(mu_cone(a, 4, o) == cold);
  CHECK(warm.size() == before);
  CHECK(warm.hits() > 0);
  std::filesystem::remove(path);
}

TEST_CASE("corrupt cache records are skipped") {
  auto path = temp_file("corrupt.cache");
  {
    MuCache cache;
    cache.attach_file(path.string(), nullptr);
    MuOptions o;
    o.cache = &cache;
    mu_cone(cone357(), 3, o);
  }
  // Damage the checksum of the first record and append garbage.
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  in.close();
  std::string text = body.str();
  const auto first_record = text.find('\n') + 1;
  const auto end_of_record = text.find('\n', first_record);
  REQUIRE(end_of_record != std::string::npos);
  text[end_of_record - 1] = text[end_of_record - 1] == '0' ? '1' : '0';
  text += "not a record\n";
  std::ofstream(path, std::ios::trunc) << text;

  MuCache cache;
  std::ostringstream warn;
  cache.attach_file(path.string(), &warn);
  CHECK(cache.skipped_records() == 2);
  CHECK(warn.str().find("skipping corrupt cache record") != std::string::npos);
  MuOptions o;
  o.cache = &cache;
  MuOptions plain;
  CHECK(mu_cone(cone357(), 3, o) == mu_cone(cone357(), 3, plain));
  std::filesystem::remove(path);
}

TEST_CASE("foreign files are not used as caches") {
  auto path = temp_file("foreign.cache");
  std::ofstream(path) << "hello\n";
  MuCache cache;
  std::ostringstream warn;
  cache.attach_file(path.string(), &warn);
  CHECK(warn.str().find("not a mu cache file") != std::string::npos);
  MuOptions o;
  o.cache = &cache;
  mu_cone(cone357(), 2, o);
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "hello\n");
  std::filesystem::remove(path);
}
