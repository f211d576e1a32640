#pragma once

// Test-only reference implementations. They avoid the library's double
// description, triangulation and Smith-form code paths so they can serve as
// independent oracles on small inputs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "toric/toric.hpp"

namespace toric::testing {

inline std::vector<LatticeVector> vecs(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<LatticeVector> out;
  for (auto r : rows) out.emplace_back(r);
  return out;
}

inline std::set<LatticeVector> as_set(const std::vector<LatticeVector>& v) { return {v.begin(), v.end()}; }

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

/// Generalised cross product of n-1 vectors in Z^n (cofactor expansion).
inline LatticeVector cross(const std::vector<LatticeVector>& vs, std::size_t n) {
  LatticeVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != i) minor(r, cc++) = vs[r][c];
    Integer d = n == 1 ? Integer(1) : determinant(minor);
    out[i] = (i % 2 == 0) ? d : Integer(-d);
  }
  return out;
}

inline LatticeVector prim(LatticeVector v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
  if (g > 1)
    for (std::size_t i = 0; i < v.rank(); ++i) v[i] /= g;
  return v;
}

/// Facet normals of a full cone, from every (n-1)-subset of generators.
inline std::set<LatticeVector> brute_dual_rays(const std::vector<LatticeVector>& gens, std::size_t n) {
  std::set<LatticeVector> out;
  if (n == 1) {
    bool pos = false, neg = false;
    for (const auto& g : gens) (g[0] > 0 ? pos : neg) = true;
    if (pos && !neg) out.insert(LatticeVector{1});
    if (neg && !pos) out.insert(LatticeVector{-1});
    return out;
  }
  const std::size_t k = gens.size();
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n - 1), true);
  do {
    std::vector<LatticeVector> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (pick[i]) sub.push_back(gens[i]);
    LatticeVector w = cross(sub, n);
    if (w.is_zero()) continue;
    for (int sign : {1, -1}) {
      LatticeVector cand = Integer(sign) * w;
      if (std::all_of(gens.begin(), gens.end(), [&](const LatticeVector& g) { return dot(cand, g) >= 0; }))
        out.insert(prim(cand));
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

using Small = std::vector<long long>;

inline Small small(const LatticeVector& v) {
  Small out;
  for (const auto& x : v) out.push_back(static_cast<long long>(x));
  return out;
}

inline long long sdot(const Small& a, const Small& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Lattice points m of a box with <m, g> >= 0 for all generators and
/// <m, grading> <= max_degree. Plain 64-bit arithmetic: inputs are small.
inline std::vector<LatticeVector> box_semigroup(const std::vector<LatticeVector>& gens, std::size_t n,
                                                const LatticeVector& grading, long long max_degree, long long box) {
  std::vector<Small> g;
  for (const auto& x : gens) g.push_back(small(x));
  const Small vc = small(grading);
  std::vector<LatticeVector> out;
  Small x(n, -box);
  for (;;) {
    if (sdot(x, vc) <= max_degree && std::all_of(g.begin(), g.end(), [&](const Small& r) { return sdot(x, r) >= 0; })) {
      LatticeVector m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = x[i];
      out.push_back(m);
    }
    std::size_t i = 0;
    while (i < n && ++x[i] > box) x[i++] = -box;
    if (i == n) break;
  }
  return out;
}

/// Irreducible nonzero elements of a degree-closed truncation of the
/// semigroup cut out by `gens`. m is reducible iff m - b is in the semigroup
/// for an irreducible b of smaller degree, so only those are tried.
inline std::set<LatticeVector> box_irreducibles(const std::vector<LatticeVector>& points,
                                                const std::vector<LatticeVector>& gens, const LatticeVector& grading) {
  std::vector<Small> g;
  for (const auto& x : gens) g.push_back(small(x));
  const Small vc = small(grading);
  std::vector<std::pair<long long, Small>> pts;
  for (const auto& p : points) pts.emplace_back(sdot(small(p), vc), small(p));
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<long long, Small>> found;
  Small diff(vc.size());
  for (const auto& [deg, m] : pts) {
    if (deg == 0) continue;
    bool reducible = false;
    for (const auto& [bdeg, b] : found) {
      if (bdeg >= deg) break;
      for (std::size_t i = 0; i < m.size(); ++i) diff[i] = m[i] - b[i];
      if (std::all_of(g.begin(), g.end(), [&](const Small& r) { return sdot(diff, r) >= 0; })) {
        reducible = true;
        break;
      }
    }
    if (!reducible) found.emplace_back(deg, m);
  }
  std::set<LatticeVector> out;
  for (const auto& [deg, m] : found) {
    LatticeVector v(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) v[i] = m[i];
    out.insert(v);
  }
  return out;
}

/// Box half-width containing every semigroup point of degree <= d: each
/// coordinate is a rational combination of the pairings with n independent
/// generators, all lying in [0, d].
inline long long semigroup_box(const std::vector<LatticeVector>& gens, std::size_t n, long long d) {
  // pick n independent generators greedily
  std::vector<LatticeVector> basis;
  for (const auto& g : gens) {
    auto trial = basis;
    trial.push_back(g);
    if (matrix_rank(IntegerMatrix::from_rows(trial, n)) == trial.size()) basis = trial;
    if (basis.size() == n) break;
  }
  IntegerMatrix g = IntegerMatrix::from_rows(basis, n);
  const Integer det = boost::multiprecision::abs(determinant(g));
  Integer worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // |m_i| <= d * sum_j |adj(G)_{ij}| / |det|
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      IntegerMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = g(r, c);
        ++rr;
      }
      s += n == 1 ? Integer(1) : boost::multiprecision::abs(determinant(minor));
    }
    worst = std::max(worst, Integer(s * d / det + 1));
  }
  return static_cast<long long>(worst);
}

/// Hilbert basis by scanning a box up to the sum of the n largest degrees
/// <w, v_C> over the facet normals w (every basis element lies in some
/// simplicial parallelepiped of the dual cone, whose degree is below that).
/// Gives up (nullopt) when the box has more than `max_box` points.
inline std::optional<std::set<LatticeVector>> brute_hilbert_basis(const std::vector<LatticeVector>& gens, std::size_t n,
                                                                  long long max_box = 2000000) {
  auto dual = brute_dual_rays(gens, n);
  std::set<LatticeVector> prims;
  for (const auto& g : gens) prims.insert(prim(g));
  // an extreme ray vanishes on n-1 independent facet normals
  std::vector<LatticeVector> extreme;
  for (const auto& r : prims) {
    std::vector<LatticeVector> zero;
    for (const auto& w : dual)
      if (dot(w, r) == 0) zero.push_back(w);
    const std::size_t rk = zero.empty() ? 0 : matrix_rank(IntegerMatrix::from_rows(zero, n));
    if (rk + 1 == n) extreme.push_back(r);
  }
  LatticeVector vc(n);
  for (const auto& r : extreme) vc += r;
  std::vector<Integer> degs;
  for (const auto& w : dual) degs.push_back(dot(w, vc));
  std::sort(degs.rbegin(), degs.rend());
  Integer total = 0;
  for (std::size_t i = 0; i < n && i < degs.size(); ++i) total += degs[i];
  const long long d = static_cast<long long>(total);
  const long long box = semigroup_box(extreme, n, d);
  long long volume = 1;
  for (std::size_t i = 0; i < n; ++i) {
    volume *= 2 * box + 1;
    if (volume > max_box) return std::nullopt;
  }
  auto pts = box_semigroup(extreme, n, vc, d, box);
  return box_irreducibles(pts, extreme, vc);
}

/// Random full pointed cones with small coordinates.
struct RandomCones {
  std::mt19937_64 rng;
  explicit RandomCones(std::uint64_t seed) : rng(seed) {}

  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }

  std::vector<LatticeVector> generators(std::size_t n, long long bound, std::size_t extra) {
    std::vector<LatticeVector> gens;
    const std::size_t k = n + static_cast<std::size_t>(uniform(0, static_cast<long long>(extra)));
    while (gens.size() < k) {
      LatticeVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = uniform(-bound, bound);
      if (!v.is_zero()) gens.push_back(v);
    }
    return gens;
  }

  /// Full pointed cone in rank n; redraws until the sample qualifies.
  Cone full_pointed(std::size_t n, long long bound, std::size_t extra = 2) {
    for (;;) {
      auto gens = generators(n, bound, extra);
      try {
        Cone c = make_cone(n, gens);
        if (c.is_full()) return c;
      } catch (const NotPointedError&) {
      }
    }
  }

  /// Cone spanned by the columns of a random unimodular matrix.
  Cone unimodular(std::size_t n, long long bound = 3) {
    for (;;) {
      auto gens = generators(n, bound, 0);
      if (boost::multiprecision::abs(determinant(IntegerMatrix::from_rows(gens, n))) == 1) return make_cone(n, gens);
    }
  }
};

}  // namespace toric::testing
