#pragma once

// Invariants of a normal toric algebra given by a full pointed cone:
// multipliers D, D', T, U, B, the divisor class group, F-signature as a
// polytope volume, and the containment / sharpness verification drivers.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "toric/cone.hpp"
#include "toric/hilbert_basis.hpp"
#include "toric/lattice.hpp"
#include "toric/monomial_ideal.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

/// D = max over the Hilbert basis of <m, v_C>.
inline Integer compute_D(const SemigroupBasis& basis) {
  return basis.max_degree();
}

/// D' = max over the Hilbert basis of <m, v_F>, for a nonzero face F.
inline Integer compute_Dprime(const SemigroupBasis& basis, const FaceDescriptor& f) {
  if (f.is_zero_face()) throw DomainError("compute_Dprime: zero face");
  Integer best = 0;
  for (const auto& b : basis.elements) best = std::max(best, pairing(b, f.face_sum));
  return best;
}

/// Cokernel of m -> (<m, u_rho>)_rho, written as Z^free_rank + sum Z/d_i.
struct ClassGroupReport {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // all > 1, each dividing the next
  std::optional<Integer> order;            // present iff finite
  std::vector<std::optional<Integer>> ray_orders;  // per ray of the cone; absent = infinite

  bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }

  /// Least positive integer killing the group, when finite.
  std::optional<Integer> exponent() const {
    if (!order) return std::nullopt;
    return invariant_factors.empty() ? Integer(1) : invariant_factors.back();
  }
};

inline ClassGroupReport class_group(const Cone& c) {
  c.require_full("class_group");
  const auto& rays = c.rays();
  const std::size_t k = rays.size();
  // Row rho is the divisor coefficient vector <., u_rho>.
  IntegerMatrix phi = IntegerMatrix::from_rows(rays, c.ambient_rank());
  SmithDecomposition snf = smith_normal_form(phi);

  ClassGroupReport out;
  out.free_rank = k - snf.rank();
  for (const auto& d : snf.diag)
    if (d > 1) out.invariant_factors.push_back(d);
  if (out.free_rank == 0) {
    Integer ord = 1;
    for (const auto& d : out.invariant_factors) ord *= d;
    out.order = ord;
  }
  // The class of P_rho is left * e_rho read in Z/d_1 + ... + Z^free.
  for (std::size_t j = 0; j < k; ++j) {
    LatticeVector image = snf.left.column(j);
    bool infinite = false;
    for (std::size_t i = snf.rank(); i < k; ++i)
      if (image[i] != 0) infinite = true;
    if (infinite) {
      out.ray_orders.emplace_back(std::nullopt);
      continue;
    }
    Integer ord = 1;
    for (std::size_t i = 0; i < snf.rank(); ++i) {
      const Integer& d = snf.diag[i];
      ord = lcm(ord, d / gcd(d, floor_mod(image[i], d)));
    }
    out.ray_orders.emplace_back(ord);
  }
  return out;
}

/// Index of the dual ray positive on ray j of a simplicial full cone (the
/// facet normal opposite to it).
inline std::size_t opposite_dual_ray(const Cone& c, std::size_t j) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < c.dual_rays().size(); ++i) {
    if (pairing(c.dual_rays()[i], c.rays()[j]) > 0) {
      if (found) throw PreconditionError("opposite_dual_ray: cone is not simplicial");
      found = i;
    }
  }
  if (!found) throw InvariantError("opposite_dual_ray: no dual ray positive on a ray");
  return *found;
}

/// <w_j, v_j>: the order of [P_j] in the class group, for simplicial cones.
inline Integer ray_class_order(const Cone& c, std::size_t j) {
  c.require_full("ray_class_order");
  if (!classify(c).simplicial) throw PreconditionError("ray_class_order: cone is not simplicial");
  if (j >= c.rays().size()) throw DomainError("ray_class_order: ray index out of range");
  return pairing(c.dual_rays()[opposite_dual_ray(c, j)], c.rays()[j]);
}

/// T = max{D, e} with e the exponent of Cl, the smallest integer with
/// e Cl = 0 (any such integer may be used, #Cl included). Absent when the
/// class group is infinite.
inline std::optional<Integer> compute_T(const SemigroupBasis& basis, const ClassGroupReport& cg) {
  if (!cg.order) return std::nullopt;
  return std::max(compute_D(basis), *cg.exponent());
}

/// U = lcm{D, #Cl}; absent when the class group is infinite.
inline std::optional<Integer> compute_U(const SemigroupBasis& basis, const ClassGroupReport& cg) {
  if (!cg.order) return std::nullopt;
  return lcm(compute_D(basis), *cg.order);
}

/// B = max over the primitive dual generators of <w, v_C>.
inline Integer compute_B_sharp(const Cone& c) {
  c.require_full("compute_B_sharp");
  Integer best = 0;
  for (const auto& w : c.dual_rays()) best = std::max(best, pairing(w, c.ray_sum()));
  return best;
}

struct FSignatureReport {
  Rational value;
  std::vector<RationalVector> polytope_vertices;
  std::optional<Rational> simplicial_check;  // 1/#Cl for simplicial cones
};

/// Exact volume of {w : 0 <= <w, u> <= 1 for every ray u}, normalised so the
/// unit lattice cube has volume 1.
///
/// Vertices are the feasible solutions of n active constraints; the polytope
/// is homogenised (w -> (w, 1)) and triangulated by pulling, and simplex
/// volumes are |det| / n!.
inline FSignatureReport f_signature(const Cone& c) {
  c.require_full("f_signature");
  const std::size_t n = c.ambient_rank();
  const auto& rays = c.rays();
  const std::size_t k = rays.size();

  std::vector<RationalVector> vertices;
  std::set<RationalVector> seen;
  std::vector<std::size_t> pick(n);
  // n-subsets of rays, each with all 2^n choices of level 0 or 1
  std::vector<bool> mask(k, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(n, k)), true);
  if (k >= n) {
    do {
      std::vector<RationalVector> a;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < k; ++i)
        if (mask[i]) {
          a.push_back(to_rational(rays[i]));
          idx.push_back(i);
        }
      if (rational_rank(a) < n) continue;
      for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        RationalVector b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = (bits >> i) & 1U ? 1 : 0;
        auto w = solve(a, b);
        bool feasible = true;
        for (const auto& u : rays) {
          Rational t = 0;
          for (std::size_t i = 0; i < n; ++i) t += (*w)[i] * Rational(u[i]);
          if (t < 0 || t > 1) {
            feasible = false;
            break;
          }
        }
        if (feasible && seen.insert(*w).second) vertices.push_back(*w);
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  std::sort(vertices.begin(), vertices.end());

  std::vector<RationalVector> homog;
  for (const auto& v : vertices) {
    auto h = v;
    h.emplace_back(1);
    homog.push_back(std::move(h));
  }
  std::vector<IndexSet> hyperplanes;
  for (const auto& u : rays)
    for (int level = 0; level <= 1; ++level) {
      IndexSet s(vertices.size());
      for (std::size_t i = 0; i < vertices.size(); ++i) {
        Rational t = 0;
        for (std::size_t j = 0; j < n; ++j) t += vertices[i][j] * Rational(u[j]);
        if (t == level) s.set(i);
      }
      hyperplanes.push_back(std::move(s));
    }
  auto simplices = pulling_triangulation(homog, hyperplanes, n + 1);

  Rational volume = 0;
  for (const auto& s : simplices) {
    std::vector<RationalVector> m;
    for (std::size_t i : s) m.push_back(homog[i]);
    Rational det = rational_determinant(std::move(m));
    volume += det < 0 ? Rational(-det) : det;
  }
  Integer factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) factorial *= i;
  volume /= Rational(factorial);

  FSignatureReport out{volume, std::move(vertices), std::nullopt};
  if (classify(c).simplicial) {
    auto cg = class_group(c);
    out.simplicial_check = Rational(1) / Rational(*cg.order);
  }
  return out;
}

/// One (face, r, multiplier) containment check I_F(K(r-1)+1) in P_F^r.
struct ContainmentVerdict {
  std::size_t face_index = 0;  // index into enumerate_faces
  long long r = 0;
  Integer multiplier;
  Integer exponent;  // K(r-1)+1
  std::string label;  // "D", "D'" or "override"
  bool passed = false;
  std::optional<LatticeVector> witness;  // generator of I_F(E) outside P^r
  bool witness_in_symbolic_power = false;  // witness also lies in P^(E)
};

inline long long to_exponent(const Integer& e) {
  if (e > Integer(1) << 40) throw DomainError("exponent too large");
  return static_cast<long long>(e);
}

inline ContainmentVerdict check_containment(const MonomialPrime& p, std::size_t face_index, long long r,
                                            const Integer& multiplier, std::string label) {
  ContainmentVerdict v;
  v.face_index = face_index;
  v.r = r;
  v.multiplier = multiplier;
  v.exponent = multiplier * (r - 1) + 1;
  v.label = std::move(label);
  const long long e = to_exponent(v.exponent);
  v.witness = valuation_witness_outside_power(p, e, r);
  v.passed = !v.witness.has_value();
  if (v.witness) v.witness_in_symbolic_power = symbolic_membership(p, e, *v.witness);
  return v;
}

/// Checks I_F(D(r-1)+1) in P^r and I_F(D'(r-1)+1) in P^r for r = 1..r_max.
/// These imply P^(D(r-1)+1) in P^r since P^(E) sits inside I_F(E). With an
/// override multiplier only that multiplier is checked.
inline std::vector<ContainmentVerdict> verify_containment(const Cone& c, const SemigroupBasis& basis,
                                                          const FaceDescriptor& f, std::size_t face_index,
                                                          long long r_max,
                                                          std::optional<Integer> override_multiplier = std::nullopt) {
  if (r_max < 1) throw DomainError("verify_containment: r_max must be at least 1");
  const MonomialPrime p = monomial_prime(c, basis, f);
  std::vector<ContainmentVerdict> out;
  const Integer d = compute_D(basis);
  const Integer dp = compute_Dprime(basis, f);
  for (long long r = 1; r <= r_max; ++r) {
    if (override_multiplier) {
      out.push_back(check_containment(p, face_index, r, *override_multiplier, "override"));
    } else {
      out.push_back(check_containment(p, face_index, r, d, "D"));
      out.push_back(check_containment(p, face_index, r, dp, "D'"));
    }
  }
  return out;
}

/// Sharpness witness: chi^w generates P_j^(B) but is not in P_j^2.
struct SharpnessWitness {
  std::size_t ray_index = 0;
  LatticeVector ray;
  LatticeVector dual_ray;
  Integer B;
  bool in_symbolic_power = false;  // w in P^(B)
  bool in_square = true;           // w in P^2
  bool valid() const { return in_symbolic_power && !in_square; }
};

inline SharpnessWitness verify_sharpness(const Cone& c, const SemigroupBasis& basis) {
  c.require_full("verify_sharpness");
  if (!classify(c).simplicial) throw PreconditionError("verify_sharpness: cone is not simplicial");
  const Integer b = compute_B_sharp(c);
  SharpnessWitness out;
  out.B = b;
  for (std::size_t j = 0; j < c.rays().size(); ++j) {
    const LatticeVector& w = c.dual_rays()[opposite_dual_ray(c, j)];
    if (pairing(w, c.ray_sum()) != b) continue;
    out.ray_index = j;
    out.ray = c.rays()[j];
    out.dual_ray = w;
    std::vector<LatticeVector> g{c.rays()[j]};
    const MonomialPrime p = monomial_prime(c, basis, face_spanned_by(c, g));
    out.in_symbolic_power = symbolic_membership(p, to_exponent(b), w);
    out.in_square = power_membership(p, 2, w);
    return out;
  }
  throw InvariantError("verify_sharpness: no ray realises B");
}

}  // namespace toric
