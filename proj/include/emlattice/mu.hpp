// SPDX-License-Identifier: Apache-2.0
//
// The analytic mu-function of rational affine cones, its closed forms in
// dimensions one and two, Dedekind sums, and the dual-cone variant mu*.
#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "emlattice/genfun.hpp"
#include "emlattice/polycone.hpp"

namespace emlattice {

enum class MuStrategy { Auto, Recursion, Decomposition };

class MuCache;

struct MuOptions {
  MuStrategy strategy = MuStrategy::Auto;
  SStrategy s_strategy = SStrategy::Auto;
  MuCache* cache = nullptr;
  // Reduce cone vertices modulo the lattice before computing. With false the
  // recursion runs on the given vertex and the cache is bypassed.
  bool canonical_vertex = true;
};

// Memo table of mu values keyed by the canonical form of a cone modulo
// lattice translations. Optionally backed by an append-only file.
class MuCache {
 public:
  MuCache() = default;
  MuCache(const MuCache&) = delete;
  MuCache& operator=(const MuCache&) = delete;

  // Loads existing records (corrupt ones are skipped and reported on `warn`)
  // and appends every later insertion to the file.
  void attach_file(const std::string& path, std::ostream* warn);

  std::optional<TruncSeries> lookup(const std::string& key, int order) const;
  void insert(const std::string& key, const TruncSeries& value);

  std::size_t size() const;
  std::size_t hits() const { return hits_.load(); }
  std::size_t skipped_records() const { return skipped_; }

  static constexpr const char* kFileMagic = "emlattice-mu-cache 1";

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, TruncSeries> table_;
  mutable std::atomic<std::size_t> hits_{0};
  std::size_t skipped_ = 0;
  std::string path_;
};

// Canonical key of an intrinsic cone: gram, sorted rays and the vertex
// reduced into [0,1[^k.
std::string mu_cache_key(const detail::LocalCone& a, MuStrategy strategy);

// Series in ambient dual coordinates.
TruncSeries mu_cone(const AffineCone& a, int order, const MuOptions& options = {});

// mu of s + R_+ v as a series in the single variable <xi, v>, t = [[s]].
std::vector<Rational> mu_dim1_closed(const Rational& s, int order);
// Same series composed with the linear form v.
TruncSeries mu_dim1_closed(const Rational& s, const QVector& v, int order);

// Sawtooth evaluation; requires gcd(p, q) = 1 and q >= 1.
Rational dedekind_sum(const Integer& q, const Integer& p, const Integer& r);

// Value at 0 of mu of a pointed two-dimensional cone.
Rational mu_dim2_value0(const AffineCone& a);
// Closed-form series of a unimodular two-dimensional cone.
TruncSeries mu_dim2_unimodular_series(const AffineCone& a, int order);

// mu of the projection of s + sigma^dual along the orthogonal of <sigma>.
// sigma is given by generators in dual coordinates of the space.
TruncSeries mu_star(const RationalSpace& space, const std::vector<QVector>& sigma,
                    const QVector& s, int order, const MuOptions& options = {});

namespace detail {

TruncSeries mu_local(const LocalCone& a, int order, const MuOptions& options);
// Direct use of the defining recursion on a solid pointed cone.
TruncSeries mu_recursive(const LocalCone& a, int order, const MuOptions& options);
// Solid unimodular cone through a change of basis to the orthant.
TruncSeries mu_unimodular(const LocalCone& a, int order, const MuOptions& options);

}  // namespace detail

}  // namespace emlattice
