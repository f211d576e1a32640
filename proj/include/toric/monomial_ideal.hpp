#pragma once

// Monomial ideals of the toric algebra F[C^v cap M], stored by exponent
// vectors: monomial primes of faces, powers, valuation ideals I_F(E),
// symbolic-power membership and containment checks.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <tuple>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "toric/cone.hpp"
#include "toric/hilbert_basis.hpp"
#include "toric/lattice.hpp"

namespace toric {

/// A monomial ideal given by generators in C^v cap M. Generators are kept in
/// increasing v_C-degree.
class MonomialIdeal {
 public:
  MonomialIdeal(Cone cone, std::vector<LatticeVector> gens, bool minimal = false)
      : cone_(std::move(cone)), gens_(std::move(gens)), minimal_(minimal) {
    for (const auto& g : gens_)
      if (!cone_.dual_contains(g)) throw DomainError("monomial ideal generator " + g.str() + " is not in the semigroup");
    detail::sort_by_degree(gens_, cone_.ray_sum());
    degrees_.reserve(gens_.size());
    for (const auto& g : gens_) degrees_.push_back(pairing(g, cone_.ray_sum()));
  }

  const Cone& cone() const noexcept { return cone_; }
  const std::vector<LatticeVector>& gens() const noexcept { return gens_; }
  bool minimal() const noexcept { return minimal_; }

  /// Generators in lexicographic order, for display and comparisons.
  std::vector<LatticeVector> sorted_gens() const {
    auto g = gens_;
    std::sort(g.begin(), g.end());
    return g;
  }

  /// Some generator dividing ell, if any. ell must lie in the semigroup.
  std::optional<LatticeVector> divisor_of(const LatticeVector& ell) const {
    const Integer d = pairing(ell, cone_.ray_sum());
    for (std::size_t i = 0; i < gens_.size() && degrees_[i] <= d; ++i)
      if (cone_.dual_contains(ell - gens_[i])) return gens_[i];
    return std::nullopt;
  }

 private:
  Cone cone_;
  std::vector<LatticeVector> gens_;
  std::vector<Integer> degrees_;
  bool minimal_;
};

/// The monomial prime P_F of a nonzero face F: generated by the Hilbert basis
/// elements pairing positively with v_F. Its height is dim F.
struct MonomialPrime {
  MonomialIdeal ideal;
  FaceDescriptor face;
  std::size_t height;
  SemigroupBasis basis;

  const LatticeVector& face_sum() const { return face.face_sum; }
};

inline MonomialPrime monomial_prime(const Cone& c, const SemigroupBasis& basis, const FaceDescriptor& f) {
  if (f.is_zero_face()) throw DomainError("monomial_prime: the zero face gives the zero ideal");
  std::vector<LatticeVector> gens;
  for (const auto& b : basis.elements)
    if (pairing(b, f.face_sum) > 0) gens.push_back(b);
  if (gens.empty()) throw InvariantError("monomial_prime: no Hilbert basis element in P_F");
  return MonomialPrime{MonomialIdeal(c, std::move(gens), true), f, f.dim, basis};
}

/// ell in I, i.e. ell - g lies in the semigroup for some generator g.
inline bool membership(const MonomialIdeal& ideal, const LatticeVector& ell) {
  if (!ideal.cone().dual_contains(ell)) throw DomainError("membership: " + ell.str() + " is not in the semigroup");
  return ideal.divisor_of(ell).has_value();
}

/// Drops every generator divisible by another one; the ideal is unchanged.
inline MonomialIdeal minimalize(const MonomialIdeal& ideal) {
  const Cone& c = ideal.cone();
  std::vector<LatticeVector> gens = ideal.gens();  // already degree-sorted
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::unordered_set<LatticeVector, LatticeVectorHash> dedup;
  std::vector<LatticeVector> kept;
  std::vector<Integer> kept_deg;
  for (auto& g : gens) {
    if (!dedup.insert(g).second) continue;
    const Integer d = pairing(g, c.ray_sum());
    bool divisible = false;
    // Equal degree and divisible forces equality, so only lower degrees matter.
    for (std::size_t i = 0; i < kept.size() && kept_deg[i] < d; ++i)
      if (c.dual_contains(g - kept[i])) {
        divisible = true;
        break;
      }
    if (!divisible) {
      kept.push_back(std::move(g));
      kept_deg.push_back(d);
    }
  }
  return MonomialIdeal(c, std::move(kept), true);
}

/// I * J, minimalized.
inline MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b) {
  std::unordered_set<LatticeVector, LatticeVectorHash> sums;
  for (const auto& x : a.gens())
    for (const auto& y : b.gens()) sums.insert(x + y);
  return minimalize(MonomialIdeal(a.cone(), std::vector<LatticeVector>(sums.begin(), sums.end())));
}

inline void require_positive_exponent(long long e, const char* what) {
  if (e <= 0) throw DomainError(std::string(what) + ": exponent must be positive");
}

/// P^r with a minimal generating set.
inline MonomialIdeal ideal_power(const MonomialPrime& p, long long r) {
  require_positive_exponent(r, "ideal_power");
  MonomialIdeal out = p.ideal;
  for (long long i = 1; i < r; ++i) out = ideal_product(out, p.ideal);
  return out;
}

/// Caches P, P^2, P^3, ...
class PrimePowers {
 public:
  explicit PrimePowers(MonomialPrime p) : prime_(std::move(p)) { powers_.push_back(prime_.ideal); }

  const MonomialPrime& prime() const noexcept { return prime_; }

  const MonomialIdeal& power(long long r) {
    require_positive_exponent(r, "PrimePowers::power");
    while (static_cast<long long>(powers_.size()) < r) powers_.push_back(ideal_product(powers_.back(), prime_.ideal));
    return powers_[static_cast<std::size_t>(r - 1)];
  }

 private:
  MonomialPrime prime_;
  std::vector<MonomialIdeal> powers_;
};

/// The valuation ideal I_F(E) = (chi^m : <m, v_F> >= E), minimally generated.
///
/// Every m with <m, v_F> >= E has a Hilbert-basis decomposition whose P-part
/// contains a sub-multiset reaching E; since each generator of P contributes at
/// least 1, the multisets of generators that first reach E (built breadth-first
/// over distinct partial sums) generate the ideal.
inline MonomialIdeal valuation_ideal(const MonomialPrime& p, long long e) {
  require_positive_exponent(e, "valuation_ideal");
  const auto& gens = p.ideal.gens();
  std::vector<Integer> val;
  for (const auto& g : gens) val.push_back(pairing(g, p.face_sum()));
  const std::size_t n = p.ideal.cone().ambient_rank();

  std::unordered_set<LatticeVector, LatticeVectorHash> seen_state, seen_candidate;
  std::vector<std::pair<LatticeVector, Integer>> states;
  std::vector<LatticeVector> candidates;
  states.emplace_back(LatticeVector(n), Integer(0));
  seen_state.insert(states.front().first);
  for (std::size_t head = 0; head < states.size(); ++head) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      LatticeVector t = states[head].first + gens[i];
      Integer v = states[head].second + val[i];
      if (v >= e) {
        if (seen_candidate.insert(t).second) candidates.push_back(std::move(t));
      } else if (seen_state.insert(t).second) {
        states.emplace_back(std::move(t), std::move(v));
      }
    }
  }
  return minimalize(MonomialIdeal(p.ideal.cone(), std::move(candidates)));
}

/// Witness that chi^ell lies in P^(E): chi^(ell + q) is divisible by the
/// generator g of P^E, with chi^q a monomial outside P (q in F* cap M).
struct SymbolicWitness {
  LatticeVector generator;
  LatticeVector multiplier;
};

/// Decides chi^ell in P^(E) = P^E R_P cap R for a monomial prime P = P_F.
///
/// chi^ell is in P^(E) iff ell + q - g lies in C^v for some generator g of P^E
/// and some q in F* cap M (monomials outside P are exactly chi^q, q in F*).
/// Over R the admissible shifts ell - g fill C^v + span(F*), whose dual is
/// C cap (F*)^perp = F. So the test is <ell - g, v> >= 0 for v in G_F.
/// Integrality of q is automatic: with u the sum of the dual rays spanning F*,
/// u pairs to 0 on F and positively on every other ray of C, so q = k u works
/// for k large. The returned witness carries the smallest such k.
inline std::optional<SymbolicWitness> symbolic_witness(const MonomialIdeal& power, const MonomialPrime& p,
                                                       const LatticeVector& ell) {
  const Cone& c = p.ideal.cone();
  if (!c.dual_contains(ell)) throw DomainError("symbolic membership: " + ell.str() + " is not in the semigroup");
  for (const auto& g : power.gens()) {
    LatticeVector x = ell - g;
    bool ok = std::all_of(p.face.generators.begin(), p.face.generators.end(),
                          [&](const LatticeVector& v) { return pairing(x, v) >= 0; });
    if (!ok) continue;
    const LatticeVector u = dual_face(c, p.face).face_sum;
    Integer k = 0;
    for (std::size_t i = 0; i < c.rays().size(); ++i) {
      if (p.face.ray_indices.test(i)) continue;
      Integer a = pairing(x, c.rays()[i]);
      Integer b = pairing(u, c.rays()[i]);
      if (a < 0) k = std::max(k, Integer((-a + b - 1) / b));
    }
    LatticeVector q = k * u;
    if (!c.dual_contains(x + q)) throw InvariantError("symbolic witness does not land in the semigroup");
    return SymbolicWitness{g, std::move(q)};
  }
  return std::nullopt;
}

/// Factorisation ell = g_1 + ... + g_r + s with g_i generators of P and s in
/// the semigroup, found by depth-first search without forming P^r. Every
/// partial remainder must stay in the semigroup, which prunes the search.
inline std::optional<std::vector<LatticeVector>> power_factorization(const MonomialPrime& p, long long r,
                                                                     const LatticeVector& ell) {
  require_positive_exponent(r, "power_factorization");
  const Cone& c = p.ideal.cone();
  if (!c.dual_contains(ell)) throw DomainError("power_factorization: " + ell.str() + " is not in the semigroup");
  const auto& gens = p.ideal.gens();
  std::vector<Integer> val;
  Integer min_val = -1;
  for (const auto& g : gens) {
    val.push_back(pairing(g, p.face_sum()));
    if (min_val < 0 || val.back() < min_val) min_val = val.back();
  }
  // failed (remainder, slots left, first index) states
  std::set<std::tuple<LatticeVector, long long, std::size_t>> dead;
  std::vector<LatticeVector> picked;
  auto dfs = [&](auto&& self, const LatticeVector& rest, const Integer& rest_val, long long left,
                 std::size_t from) -> bool {
    if (left == 0) return true;
    if (rest_val < min_val * left) return false;
    if (dead.count({rest, left, from})) return false;
    for (std::size_t i = from; i < gens.size(); ++i) {
      LatticeVector next = rest - gens[i];
      if (!c.dual_contains(next)) continue;
      picked.push_back(gens[i]);
      if (self(self, next, rest_val - val[i], left - 1, i)) return true;
      picked.pop_back();
    }
    dead.insert({rest, left, from});
    return false;
  };
  if (!dfs(dfs, ell, pairing(ell, p.face_sum()), r, 0)) return std::nullopt;
  return picked;
}

inline bool power_membership(const MonomialPrime& p, long long r, const LatticeVector& ell) {
  return power_factorization(p, r, ell).has_value();
}

/// The same criterion without forming P^E: some sum g of E generators of P has
/// <ell - g, v> >= 0 for every v in G_F. Only the pairings with G_F matter, so
/// this is a layered search over those pairing vectors.
inline std::optional<SymbolicWitness> symbolic_witness(const MonomialPrime& p, long long e, const LatticeVector& ell) {
  require_positive_exponent(e, "symbolic_witness");
  const Cone& c = p.ideal.cone();
  if (!c.dual_contains(ell)) throw DomainError("symbolic membership: " + ell.str() + " is not in the semigroup");
  const auto& face_gens = p.face.generators;
  auto project = [&](const LatticeVector& m) {
    LatticeVector out(face_gens.size());
    for (std::size_t i = 0; i < face_gens.size(); ++i) out[i] = pairing(m, face_gens[i]);
    return out;
  };
  // one generator per distinct projection
  std::map<LatticeVector, LatticeVector> steps;
  for (const auto& g : p.ideal.gens()) steps.emplace(project(g), g);
  Integer min_val = -1;
  for (const auto& g : p.ideal.gens())
    if (min_val < 0 || pairing(g, p.face_sum()) < min_val) min_val = pairing(g, p.face_sum());
  if (pairing(ell, p.face_sum()) < min_val * e) return std::nullopt;

  auto nonnegative = [](const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x >= 0; });
  };
  // budget left on each v in G_F -> a sum of generators reaching it
  std::map<LatticeVector, LatticeVector> layer{{project(ell), LatticeVector(ell.rank())}};
  for (long long k = 0; k < e && !layer.empty(); ++k) {
    std::map<LatticeVector, LatticeVector> next;
    for (const auto& [budget, sum] : layer)
      for (const auto& [step, g] : steps) {
        LatticeVector b = budget - step;
        if (nonnegative(b)) next.try_emplace(std::move(b), sum + g);
      }
    layer = std::move(next);
  }
  if (layer.empty()) return std::nullopt;
  MonomialIdeal single(c, {layer.begin()->second});
  return symbolic_witness(single, p, ell);
}

inline bool symbolic_membership(PrimePowers& powers, long long e, const LatticeVector& ell) {
  return symbolic_witness(powers.prime(), e, ell).has_value();
}

inline bool symbolic_membership(const MonomialPrime& p, long long e, const LatticeVector& ell) {
  return symbolic_witness(p, e, ell).has_value();
}

/// Default bound of the saturation search: 10 E max_b <b, v_C>.
inline Integer default_search_degree(const MonomialPrime& p, long long e) {
  return 10 * Integer(e) * p.basis.max_degree();
}

/// Outcome of the brute-force saturation search. `found == false` means
/// "unknown": no witness within the search bound.
struct SaturationResult {
  bool found = false;
  LatticeVector witness;  // q with chi^(ell + q) in P^E
};

/// Independent check of symbolic membership: searches q in F* cap M with
/// <q, v_C> <= search_degree such that ell + q lies in P^E, using only the
/// ideal power and semigroup divisibility.
class SaturationSearch {
 public:
  SaturationSearch(const MonomialPrime& p, const Integer& search_degree) : prime_(p), search_degree_(search_degree) {
    // F* cap M is generated by the Hilbert basis elements vanishing on v_F.
    std::vector<LatticeVector> face_basis;
    for (const auto& b : p.basis.elements)
      if (pairing(b, p.face_sum()) == 0) face_basis.push_back(b);
    SemigroupBasis fb{p.basis.cone, face_basis, p.basis.grading};
    points_ = enumerate_semigroup(fb, search_degree);
    if (!face_basis.empty()) {
      min_step_ = fb.degree(face_basis.front());
      for (const auto& b : face_basis) min_step_ = std::min(min_step_, fb.degree(b));
    }
    for (const auto& q : points_) degrees_.push_back(fb.degree(q));
  }

  const Integer& search_degree() const noexcept { return search_degree_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Lowest-degree witness for ell in the saturation of `power`.
  SaturationResult find(const MonomialIdeal& power, const LatticeVector& ell) const {
    return find_if([&](const LatticeVector& m) { return power.divisor_of(m).has_value(); }, ell);
  }

  /// The same search for P^e, testing ell + q in P^e by factorisation.
  SaturationResult find(long long e, const LatticeVector& ell) const {
    return find_if([&](const LatticeVector& m) { return power_membership(prime_, e, m); }, ell);
  }

 private:
  template <class InPower>
  SaturationResult find_if(InPower&& in_power, const LatticeVector& ell) const {
    // Ideals are closed under multiplication, and every q in range is dominated
    // (q' - q in F* cap M) by some q' within min_step_ of the bound. So if no q'
    // in that top band works, nothing does.
    if (min_step_ > 0) {
      bool any = false;
      for (std::size_t i = points_.size(); i-- > 0 && degrees_[i] > search_degree_ - min_step_;)
        if (in_power(ell + points_[i])) {
          any = true;
          break;
        }
      if (!any) return {};
    }
    for (const auto& q : points_)
      if (in_power(ell + q)) return {true, q};
    return {};
  }

  MonomialPrime prime_;
  Integer search_degree_;
  std::vector<LatticeVector> points_;
  std::vector<Integer> degrees_;
  Integer min_step_ = 0;
};

inline SaturationResult symbolic_membership_bruteforce(const MonomialPrime& p, long long e, const LatticeVector& ell,
                                                       const Integer& search_degree) {
  if (!p.ideal.cone().dual_contains(ell)) throw DomainError("saturation search: point outside the semigroup");
  return SaturationSearch(p, search_degree).find(e, ell);
}

/// A minimal generator of I_F(e) outside P^r, if any, without listing I_F(e).
///
/// For m in I_F(e), the P-part of a Hilbert basis decomposition of m still
/// pairs >= e with v_F and divides m; with r or more terms it lies in P^r. So
/// I_F(e) is outside P^r exactly when some sum of at most r - 1 generators of
/// P pairing >= e is, and such a sum is then reduced to a minimal generator.
inline std::optional<LatticeVector> valuation_witness_outside_power(const MonomialPrime& p, long long e, long long r) {
  require_positive_exponent(e, "valuation_witness_outside_power");
  require_positive_exponent(r, "valuation_witness_outside_power");
  const Cone& c = p.ideal.cone();
  const auto& gens = p.ideal.gens();
  std::vector<Integer> val;
  Integer max_val = 0;
  for (const auto& g : gens) {
    val.push_back(pairing(g, p.face_sum()));
    max_val = std::max(max_val, val.back());
  }
  std::optional<LatticeVector> found;
  auto dfs = [&](auto&& self, const LatticeVector& sum, const Integer& sum_val, long long count,
                 std::size_t from) -> bool {
    if (sum_val >= e) {
      if (power_membership(p, r, sum)) return false;
      found = sum;
      return true;
    }
    if (count == r - 1 || sum_val + (r - 1 - count) * max_val < e) return false;
    for (std::size_t i = from; i < gens.size(); ++i)
      if (self(self, sum + gens[i], sum_val + val[i], count + 1, i)) return true;
    return false;
  };
  if (!dfs(dfs, LatticeVector(c.ambient_rank()), Integer(0), 0, 0)) return std::nullopt;

  LatticeVector m = *found;
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (const auto& b : p.basis.elements) {
      LatticeVector rest = m - b;
      if (c.dual_contains(rest) && pairing(rest, p.face_sum()) >= e) {
        m = std::move(rest);
        shrunk = true;
        break;
      }
    }
  }
  return m;
}

/// First generator of `inner` not contained in `outer`, if any.
inline std::optional<LatticeVector> find_uncontained(const MonomialIdeal& inner, const MonomialIdeal& outer) {
  for (const auto& g : inner.gens())
    if (!outer.divisor_of(g)) return g;
  return std::nullopt;
}

inline bool ideal_containment(const MonomialIdeal& inner, const MonomialIdeal& outer) {
  return !find_uncontained(inner, outer).has_value();
}

}  // namespace toric
