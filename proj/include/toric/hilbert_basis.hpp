#pragma once

// Hilbert basis of the semigroup C^v cap M for a full pointed cone C, and
// degree-truncated enumeration of the semigroup.

#include <algorithm>
#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "toric/cone.hpp"
#include "toric/lattice.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

/// The Hilbert basis of C^v cap M, sorted lexicographically, together with
/// the grading functional v_C (strictly positive on the semigroup minus 0).
struct SemigroupBasis {
  Cone cone;
  std::vector<LatticeVector> elements;
  LatticeVector grading;

  Integer degree(const LatticeVector& m) const { return pairing(m, grading); }

  Integer max_degree() const {
    Integer best = 0;
    for (const auto& b : elements) best = std::max(best, degree(b));
    return best;
  }
};

namespace detail {

inline void sort_by_degree(std::vector<LatticeVector>& v, const LatticeVector& grading) {
  std::vector<std::pair<Integer, LatticeVector>> keyed;
  keyed.reserve(v.size());
  for (auto& x : v) keyed.emplace_back(pairing(x, grading), std::move(x));
  std::sort(keyed.begin(), keyed.end());
  v.clear();
  for (auto& [d, x] : keyed) v.push_back(std::move(x));
}

}  // namespace detail

/// Nonzero lattice points of the half-open parallelepiped
/// { sum lambda_i w_i : 0 <= lambda_i < 1 } spanned by n independent vectors.
///
/// The points are the canonical representatives of Z^n / W Z^n; the cosets are
/// listed through the Smith form of W and each is folded into the box.
inline std::vector<LatticeVector> parallelepiped_points(std::span<const LatticeVector> simplex, std::size_t n) {
  IntegerMatrix w = IntegerMatrix::from_columns(simplex, n);
  const Integer det = determinant(w);
  if (det == 0) throw PreconditionError("parallelepiped_points: dependent vectors");
  const Integer vol = boost::multiprecision::abs(det);

  // adj(W) = det * W^{-1}, computed column by column over Q.
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(to_rational(w.row(i)));
  IntegerMatrix adj(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n, Rational(0));
    e[j] = 1;
    auto col = solve(rows, e);
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = (*col)[i] * Rational(det);
      if (boost::multiprecision::denominator(x) != 1) throw InvariantError("adjugate not integral");
      adj(i, j) = boost::multiprecision::numerator(x);
    }
  }
  if (det < 0)
    for (std::size_t i = 0; i < n; ++i) adj.negate_row(i);  // now adj = |det| W^{-1}

  SmithDecomposition snf = smith_normal_form(w);
  std::vector<LatticeVector> out;
  std::vector<Integer> digit(n, Integer(0));
  for (;;) {
    LatticeVector a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = digit[i];
    LatticeVector p = snf.left_inverse * a;
    LatticeVector mu = adj * p;  // |det| * lambda
    for (std::size_t i = 0; i < n; ++i) mu[i] = floor_mod(mu[i], vol);
    LatticeVector q = w * mu;
    for (std::size_t i = 0; i < n; ++i) {
      if (q[i] % vol != 0) throw InvariantError("parallelepiped point not integral");
      q[i] /= vol;
    }
    if (!q.is_zero()) out.push_back(std::move(q));

    std::size_t k = 0;
    while (k < n) {
      ++digit[k];
      if (digit[k] < snf.diag[k]) break;
      digit[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return out;
}

/// True iff m is not a sum of two nonzero semigroup elements. `basis_so_far`
/// must contain every Hilbert basis element of smaller degree than m.
inline bool is_irreducible(const Cone& c, std::span<const LatticeVector> basis_so_far, const LatticeVector& m) {
  const Integer dm = pairing(m, c.ray_sum());
  for (const auto& b : basis_so_far) {
    if (b == m || pairing(b, c.ray_sum()) >= dm) continue;
    if (c.dual_contains(m - b)) return false;
  }
  return true;
}

/// Hilbert basis of C^v cap M.
///
/// C^v is triangulated (pulling triangulation on its rays); the rays together
/// with the lattice points of each simplicial parallelepiped generate the
/// semigroup, and the irreducible candidates, found in increasing degree,
/// form the basis.
inline SemigroupBasis hilbert_basis(const Cone& c) {
  c.require_full("hilbert_basis");
  const std::size_t n = c.ambient_rank();
  const auto& dual = c.dual_rays();

  std::vector<RationalVector> pts;
  for (const auto& w : dual) pts.push_back(to_rational(w));
  auto facets = incidence_sets(dual, c.rays());
  auto simplices = pulling_triangulation(pts, facets, n);

  std::unordered_set<LatticeVector, LatticeVectorHash> seen(dual.begin(), dual.end());
  std::vector<LatticeVector> candidates(dual.begin(), dual.end());
  for (const auto& s : simplices) {
    std::vector<LatticeVector> gens;
    for (std::size_t i : s) gens.push_back(dual[i]);
    for (auto& p : parallelepiped_points(gens, n))
      if (seen.insert(p).second) candidates.push_back(std::move(p));
  }
  detail::sort_by_degree(candidates, c.ray_sum());

  SemigroupBasis out{c, {}, c.ray_sum()};
  for (const auto& m : candidates)
    if (is_irreducible(c, out.elements, m)) out.elements.push_back(m);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

/// All m in C^v cap M with <m, v_C> <= max_degree, sorted by degree then
/// lexicographically. Breadth-first closure of {0} under adding basis elements.
inline std::vector<LatticeVector> enumerate_semigroup(const SemigroupBasis& basis, const Integer& max_degree) {
  const std::size_t n = basis.cone.ambient_rank();
  std::vector<LatticeVector> out;
  if (max_degree < 0) return out;
  std::unordered_set<LatticeVector, LatticeVectorHash> seen;
  std::vector<std::pair<LatticeVector, Integer>> queue;
  queue.emplace_back(LatticeVector(n), Integer(0));
  seen.insert(queue.front().first);
  std::vector<Integer> degs;
  for (const auto& b : basis.elements) degs.push_back(basis.degree(b));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
      Integer d = queue[head].second + degs[i];
      if (d > max_degree) continue;
      LatticeVector m = queue[head].first + basis.elements[i];
      if (seen.insert(m).second) queue.emplace_back(std::move(m), std::move(d));
    }
  }
  for (auto& [m, d] : queue) out.push_back(std::move(m));
  detail::sort_by_degree(out, basis.grading);
  return out;
}

inline std::vector<LatticeVector> enumerate_semigroup(const Cone& c, const Integer& max_degree) {
  return enumerate_semigroup(hilbert_basis(c), max_degree);
}

}  // namespace toric
