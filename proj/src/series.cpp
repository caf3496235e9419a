// SPDX-License-Identifier: Apache-2.0
#include "emlattice/series.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "emlattice/errors.hpp"
#include "emlattice/parallel.hpp"

namespace emlattice {

namespace {

std::uint64_t small_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void generate_degree(int nvars, int n, std::vector<int>& prefix, std::vector<int>& out) {
  if (static_cast<int>(prefix.size()) == nvars - 1) {
    out.insert(out.end(), prefix.begin(), prefix.end());
    out.push_back(n);
    return;
  }
  for (int e = n; e >= 0; --e) {
    prefix.push_back(e);
    generate_degree(nvars, n - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

// ---------------------------------------------------------------- MonomialTable

std::size_t MonomialTable::count_up_to(int nvars, int order) {
  if (order < 0) return 0;
  return static_cast<std::size_t>(small_binomial(order + nvars, nvars));
}

std::size_t MonomialTable::rank(std::span<const int> e) {
  const int k = static_cast<int>(e.size());
  if (k == 0) return 0;
  int n = 0;
  for (int x : e) n += x;
  std::size_t r = count_up_to(k, n - 1);
  int rem = n;
  for (int i = 0; i + 1 < k; ++i) {
    int kk = k - i;
    r += static_cast<std::size_t>(small_binomial(rem - e[static_cast<std::size_t>(i)] + kk - 2, kk - 1));
    rem -= e[static_cast<std::size_t>(i)];
  }
  return r;
}

MonomialTable::MonomialTable(int nvars, int order) : nvars_(nvars), order_(order) {
  degree_offset_.push_back(0);
  for (int n = 0; n <= order; ++n) {
    if (nvars == 0) {
      degree_offset_.push_back(1);
      if (n == 0) degrees_.push_back(0);
      continue;
    }
    std::vector<int> prefix;
    std::size_t before = exps_.size();
    generate_degree(nvars, n, prefix, exps_);
    std::size_t added = (exps_.size() - before) / static_cast<std::size_t>(nvars);
    degree_offset_.push_back(degree_offset_.back() + added);
    degrees_.insert(degrees_.end(), added, n);
  }
}

std::shared_ptr<const MonomialTable> MonomialTable::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialTable>> cache;
  if (nvars < 0 || order < 0) throw DomainError("invalid monomial table shape");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const MonomialTable> t(new MonomialTable(nvars, order));
  cache.emplace(key, t);
  return t;
}

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries() : TruncSeries(0, 0) {}

TruncSeries::TruncSeries(int nvars, int order)
    : nvars_(nvars), order_(order), table_(MonomialTable::get(nvars, std::max(order, 0))) {
  if (order < 0) throw OrderUnderflow("series order below zero");
  coeffs_.resize(table_->count());
}

TruncSeries TruncSeries::constant(int nvars, int order, const Rational& c) {
  TruncSeries s(nvars, order);
  s.coeffs_[0] = c;
  return s;
}

TruncSeries TruncSeries::variable(int nvars, int order, int i) {
  TruncSeries s(nvars, order);
  if (order >= 1) {
    MultiIndex e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    s.add_to(e, 1);
  }
  return s;
}

Rational TruncSeries::coeff(std::span<const int> e) const {
  if (static_cast<int>(e.size()) != nvars_) throw DomainError("exponent length mismatch");
  int deg = 0;
  for (int x : e) deg += x;
  if (deg > order_) throw OrderUnderflow("coefficient beyond the known order");
  return coeffs_[MonomialTable::rank(e)];
}

void TruncSeries::add_to(std::span<const int> e, const Rational& c) {
  int deg = 0;
  for (int x : e) deg += x;
  if (deg > order_) return;
  coeffs_[MonomialTable::rank(e)] += c;
}

TruncSeries TruncSeries::truncated(int order) const {
  if (order > order_) throw OrderUnderflow("cannot raise the order of a truncated series");
  if (order == order_) return *this;
  TruncSeries t(nvars_, order);
  std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(t.size()),
            t.coeffs_.begin());
  return t;
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return r == 0; });
}

int TruncSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return table_->degree(i);
  return order_ + 1;
}

Rational TruncSeries::evaluate(const QVector& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw DomainError("evaluation point length");
  std::vector<std::vector<Rational>> pw(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    pw[i].resize(static_cast<std::size_t>(order_) + 1);
    pw[i][0] = 1;
    for (int e = 1; e <= order_; ++e)
      pw[i][static_cast<std::size_t>(e)] = pw[i][static_cast<std::size_t>(e) - 1] * point[i];
  }
  Rational total;
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    if (coeffs_[idx] == 0) continue;
    Rational t = coeffs_[idx];
    auto e = exponents(idx);
    for (std::size_t i = 0; i < e.size(); ++i) t *= pw[i][static_cast<std::size_t>(e[i])];
    total += t;
  }
  return total;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
  if (other.nvars_ != nvars_) throw DomainError("series variable count mismatch");
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (other.coeffs_[i] != 0) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
  if (other.nvars_ != nvars_) throw DomainError("series variable count mismatch");
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (other.coeffs_[i] != 0) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_)
    if (x != 0) x *= c;
  return *this;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

bool TruncSeries::operator==(const TruncSeries& other) const {
  return nvars_ == other.nvars_ && order_ == other.order_ && coeffs_ == other.coeffs_;
}

TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
TruncSeries operator*(TruncSeries a, const Rational& c) { return a *= c; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  int order = std::min(a.order() + b.valuation(), b.order() + a.valuation());
  return multiply(a, b, order);
}

// ---------------------------------------------------------------- products

namespace {

void check_product_order(const TruncSeries& a, const TruncSeries& b, int order) {
  if (a.nvars() != b.nvars()) throw DomainError("series variable count mismatch");
  if (order > std::min(a.order() + b.valuation(), b.order() + a.valuation()))
    throw OrderUnderflow("product order exceeds the known coefficients");
}

}  // namespace

TruncSeries multiply_serial(const TruncSeries& a, const TruncSeries& b, int order) {
  check_product_order(a, b, order);
  const int k = a.nvars();
  TruncSeries c(k, order);
  MultiIndex e(static_cast<std::size_t>(k));
  const std::size_t a_end = a.degree_end(std::min(order, a.order()));
  for (std::size_t i = 0; i < a_end; ++i) {
    if (a.at(i) == 0) continue;
    const int da = a.degree_of(i);
    const int rest = std::min(order - da, b.order());
    if (rest < 0) continue;
    auto ea = a.exponents(i);
    const std::size_t b_end = b.degree_end(rest);
    for (std::size_t j = 0; j < b_end; ++j) {
      if (b.at(j) == 0) continue;
      auto eb = b.exponents(j);
      for (int v = 0; v < k; ++v) e[static_cast<std::size_t>(v)] = ea[static_cast<std::size_t>(v)] + eb[static_cast<std::size_t>(v)];
      c.at(MonomialTable::rank(e)) += a.at(i) * b.at(j);
    }
  }
  return c;
}

TruncSeries multiply_parallel(const TruncSeries& a, const TruncSeries& b, int order) {
  check_product_order(a, b, order);
  const int k = a.nvars();
  TruncSeries c(k, order);
  const std::size_t n = c.size();
  parallel_for(n, [&](std::size_t idx) {
    auto g = c.exponents(idx);
    const int dg = c.degree_of(idx);
    MultiIndex al(static_cast<std::size_t>(k), 0);
    MultiIndex be(g.begin(), g.end());
    Rational acc;
    // Odometer over all alpha <= gamma.
    while (true) {
      int da = 0;
      for (int v : al) da += v;
      if (da <= a.order() && dg - da <= b.order()) {
        const Rational& x = a.at(MonomialTable::rank(al));
        if (x != 0) {
          const Rational& y = b.at(MonomialTable::rank(be));
          if (y != 0) acc += x * y;
        }
      }
      int pos = 0;
      while (pos < k) {
        auto p = static_cast<std::size_t>(pos);
        if (al[p] < g[p]) {
          ++al[p];
          --be[p];
          break;
        }
        be[p] = g[p];
        al[p] = 0;
        ++pos;
      }
      if (pos == k) break;
    }
    c.at(idx) = std::move(acc);
  });
  return c;
}

TruncSeries multiply(const TruncSeries& a, const TruncSeries& b, int order) {
  constexpr std::size_t kParallelThreshold = 4096;
  if (parallel_enabled() && a.size() >= kParallelThreshold && b.size() >= kParallelThreshold)
    return multiply_parallel(a, b, order);
  return multiply_serial(a, b, order);
}

TruncSeries multiply_linear(const TruncSeries& s, const QVector& v) {
  const int k = s.nvars();
  if (static_cast<int>(v.size()) != k) throw DomainError("linear form length mismatch");
  TruncSeries r(k, s.order() + 1);
  MultiIndex e(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == 0) continue;
    auto es = s.exponents(i);
    std::copy(es.begin(), es.end(), e.begin());
    for (int j = 0; j < k; ++j) {
      auto jj = static_cast<std::size_t>(j);
      if (v[jj] == 0) continue;
      ++e[jj];
      r.at(MonomialTable::rank(e)) += s.at(i) * v[jj];
      --e[jj];
    }
  }
  return r;
}

TruncSeries divide_linear(const TruncSeries& s, const QVector& v) {
  const int k = s.nvars();
  if (static_cast<int>(v.size()) != k) throw DomainError("linear form length mismatch");
  if (is_zero(v)) throw DomainError("division by the zero linear form");
  const int m = s.order();
  if (m < 1) throw OrderUnderflow("division needs a numerator of order at least one");
  std::size_t p = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (abs(v[j]) > abs(v[p])) p = j;
  const Rational inv_p = 1 / v[p];

  TruncSeries q(k, m - 1);
  MultiIndex e(static_cast<std::size_t>(k));
  for (int n = 0; n <= m - 1; ++n) {
    std::vector<std::size_t> idxs(q.degree_end(n) - q.degree_begin(n));
    std::iota(idxs.begin(), idxs.end(), q.degree_begin(n));
    std::stable_sort(idxs.begin(), idxs.end(), [&](std::size_t x, std::size_t y) {
      return q.exponents(x)[p] > q.exponents(y)[p];
    });
    for (std::size_t idx : idxs) {
      auto a = q.exponents(idx);
      std::copy(a.begin(), a.end(), e.begin());
      ++e[p];
      Rational acc = s.at(MonomialTable::rank(e));
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (j == p || v[j] == 0 || e[j] == 0) continue;
        --e[j];
        acc -= v[j] * q.at(MonomialTable::rank(e));
        ++e[j];
      }
      q.at(idx) = acc * inv_p;
    }
  }
  // Equations not used by the recurrence: monomials free of the pivot variable.
  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    auto b = s.exponents(idx);
    if (b[p] != 0) continue;
    std::copy(b.begin(), b.end(), e.begin());
    Rational acc = s.at(idx);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == p || v[j] == 0 || e[j] == 0) continue;
      --e[j];
      acc -= v[j] * q.at(MonomialTable::rank(e));
      ++e[j];
    }
    if (acc != 0) {
      int deg = s.degree_of(idx);
      throw NotDivisible(deg, "numerator not divisible by linear form at degree " +
                                  std::to_string(deg));
    }
  }
  return q;
}

// ---------------------------------------------------------------- substitution

namespace {

// Homogeneous polynomial of a fixed degree in nvars variables, stored densely
// in the within-degree monomial order; empty means zero.
struct Homog {
  int degree = 0;
  std::vector<Rational> c;
};

class HomogAlgebra {
 public:
  HomogAlgebra(int nvars, int max_degree)
      : nvars_(nvars), table_(MonomialTable::get(nvars, max_degree)) {}

  std::size_t width(int n) const { return table_->degree_end(n) - table_->degree_begin(n); }

  Homog times_form(const Homog& h, const std::vector<Rational>& form) const {
    if (h.c.empty()) return {};
    Homog r{h.degree + 1, std::vector<Rational>(width(h.degree + 1))};
    const std::size_t base = table_->degree_begin(h.degree);
    const std::size_t rbase = table_->degree_begin(h.degree + 1);
    MultiIndex e(static_cast<std::size_t>(nvars_));
    for (std::size_t i = 0; i < h.c.size(); ++i) {
      if (h.c[i] == 0) continue;
      auto ex = table_->exponents(base + i);
      std::copy(ex.begin(), ex.end(), e.begin());
      for (std::size_t j = 0; j < form.size(); ++j) {
        if (form[j] == 0) continue;
        ++e[j];
        r.c[MonomialTable::rank(e) - rbase] += h.c[i] * form[j];
        --e[j];
      }
    }
    return r;
  }

  static void add_scaled(Homog& acc, const Homog& h, const Rational& c) {
    if (h.c.empty() || c == 0) return;
    if (acc.c.empty()) {
      acc.degree = h.degree;
      acc.c.assign(h.c.size(), Rational(0));
    }
    for (std::size_t i = 0; i < h.c.size(); ++i)
      if (h.c[i] != 0) acc.c[i] += h.c[i] * c;
  }

  std::vector<Homog> powers(const std::vector<Rational>& form, int up_to) const {
    std::vector<Homog> pw;
    pw.push_back(Homog{0, std::vector<Rational>{Rational(1)}});
    for (int j = 1; j <= up_to; ++j) pw.push_back(times_form(pw.back(), form));
    return pw;
  }

 private:
  int nvars_;
  std::shared_ptr<const MonomialTable> table_;
};

struct Substituter {
  const TruncSeries& s;
  const std::vector<std::vector<Rational>>& forms;  // forms[i] = row i of M
  const HomogAlgebra& alg;
  const std::vector<Homog>& last_powers;
  MultiIndex e;

  // Image of the part of the degree-n component with the prefix e[0..i)
  // fixed and remaining degree rem in variables i..k-1.
  Homog run(std::size_t i, int rem) {
    const std::size_t k = forms.size();
    if (i + 1 == k) {
      e[i] = rem;
      const Rational& c = s.at(MonomialTable::rank(e));
      Homog out;
      if (c != 0) HomogAlgebra::add_scaled(out, last_powers[static_cast<std::size_t>(rem)], c);
      return out;
    }
    Homog h;
    for (int a = rem; a >= 0; --a) {
      if (!h.c.empty()) h = alg.times_form(h, forms[i]);
      e[i] = a;
      Homog sub = run(i + 1, rem - a);
      if (!sub.c.empty()) {
        if (h.c.empty()) {
          h = std::move(sub);
        } else {
          for (std::size_t t = 0; t < sub.c.size(); ++t)
            if (sub.c[t] != 0) h.c[t] += sub.c[t];
        }
      }
    }
    e[i] = 0;
    return h;
  }
};

}  // namespace

TruncSeries substitute_linear(const TruncSeries& s, const QMatrix& m) {
  const int k_old = s.nvars();
  if (static_cast<int>(m.rows()) != k_old) throw DomainError("substitution matrix shape mismatch");
  const int k_new = static_cast<int>(m.cols());
  const int order = s.order();
  if (k_old == k_new && m == QMatrix::identity(m.rows())) return s;
  TruncSeries out(k_new, order);
  if (k_old == 0) {
    out.at(0) = s.at(0);
    return out;
  }
  std::vector<std::vector<Rational>> forms(static_cast<std::size_t>(k_old));
  for (int i = 0; i < k_old; ++i) forms[static_cast<std::size_t>(i)] = m.row(static_cast<std::size_t>(i));
  HomogAlgebra alg(k_new, order + 1);
  std::vector<Homog> last = alg.powers(forms.back(), order);
  Substituter sub{s, forms, alg, last, MultiIndex(static_cast<std::size_t>(k_old), 0)};
  for (int n = 0; n <= order; ++n) {
    bool any = false;
    for (std::size_t i = s.degree_begin(n); i < s.degree_end(n); ++i)
      if (s.at(i) != 0) {
        any = true;
        break;
      }
    if (!any) continue;
    Homog h = sub.run(0, n);
    if (h.c.empty()) continue;
    const std::size_t base = out.degree_begin(n);
    for (std::size_t t = 0; t < h.c.size(); ++t) out.at(base + t) = h.c[t];
  }
  return out;
}

TruncSeries TruncSeries::univariate_composed(std::span<const Rational> coeffs, const QVector& v,
                                             int order) {
  const int k = static_cast<int>(v.size());
  TruncSeries out(k, order);
  HomogAlgebra alg(k, order + 1);
  Homog p{0, std::vector<Rational>{Rational(1)}};
  for (int n = 0; n <= order && static_cast<std::size_t>(n) < coeffs.size(); ++n) {
    if (n > 0) p = alg.times_form(p, v);
    if (p.c.empty()) break;
    const Rational& c = coeffs[static_cast<std::size_t>(n)];
    if (c == 0) continue;
    const std::size_t base = out.degree_begin(n);
    for (std::size_t t = 0; t < p.c.size(); ++t)
      if (p.c[t] != 0) out.at(base + t) += p.c[t] * c;
  }
  return out;
}

TruncSeries TruncSeries::exp_linear(const QVector& s, int order) {
  const int k = static_cast<int>(s.size());
  TruncSeries out(k, order);
  std::vector<std::vector<Rational>> pw(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    pw[i].resize(static_cast<std::size_t>(order) + 1);
    pw[i][0] = 1;
    for (int e = 1; e <= order; ++e)
      pw[i][static_cast<std::size_t>(e)] = pw[i][static_cast<std::size_t>(e) - 1] * s[i] / e;
  }
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    auto e = out.exponents(idx);
    Rational t = 1;
    for (std::size_t i = 0; i < e.size() && t != 0; ++i) t *= pw[i][static_cast<std::size_t>(e[i])];
    out.at(idx) = t;
  }
  return out;
}

TruncSeries embed(const TruncSeries& s, int new_nvars, std::span<const int> var_map) {
  if (static_cast<int>(var_map.size()) != s.nvars()) throw DomainError("variable map length");
  TruncSeries out(new_nvars, s.order());
  MultiIndex e(static_cast<std::size_t>(new_nvars));
  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    if (s.at(idx) == 0) continue;
    std::fill(e.begin(), e.end(), 0);
    auto es = s.exponents(idx);
    for (std::size_t i = 0; i < es.size(); ++i) e[static_cast<std::size_t>(var_map[i])] += es[i];
    out.at(MonomialTable::rank(e)) += s.at(idx);
  }
  return out;
}

}  // namespace emlattice
