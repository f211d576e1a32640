#pragma once

// Named example families (hypersurfaces z^E = x_1...x_n, Veronese and
// Segre-Veronese algebras) with the invariants predicted for them in closed
// form. Predictions are plain data, compared against computed values by the
// callers.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "toric/cone.hpp"
#include "toric/lattice.hpp"

namespace toric {

enum class FamilyKind { hypersurface, veronese, segre_veronese };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::hypersurface: return "hypersurface";
    case FamilyKind::veronese: return "veronese";
    case FamilyKind::segre_veronese: return "segre-veronese";
  }
  return "?";
}

/// Closed-form values where they are known. Unset fields are not predicted.
struct Prediction {
  std::optional<std::vector<LatticeVector>> hilbert_basis;  // sorted
  std::optional<Integer> hilbert_basis_size;
  std::optional<LatticeVector> grading;  // v_C
  std::optional<Integer> D;
  std::optional<Integer> T;
  std::optional<std::vector<Integer>> class_group_invariant_factors;
  std::optional<Integer> class_group_order;
  std::optional<Rational> f_signature;
  std::optional<bool> smooth;
};

struct FamilySpec {
  FamilyKind kind;
  std::vector<long long> E;  // degrees (a single entry for hypersurface/veronese)
  std::vector<long long> m;  // variable counts; {n} for hypersurface/veronese
  Prediction predicted;

  std::string name() const {
    auto join = [](const std::vector<long long>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    if (kind == FamilyKind::segre_veronese) return "segre-veronese E=" + join(E) + " m=" + join(m);
    return to_string(kind) + " E=" + join(E) + " n=" + join(m);
  }
};

struct FamilyInstance {
  Cone cone;
  FamilySpec spec;
};

inline Integer binomial(long long n, long long k) {
  Integer r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline LatticeVector unit(std::size_t rank, std::size_t i) {
  LatticeVector e(rank);
  e[i] = 1;
  return e;
}

/// Cone of z^E = x_1 ... x_n: generators e_n and E e_i + e_n, i < n.
inline FamilyInstance hypersurface_cone(long long n, long long e) {
  if (n < 2 || e < 2) throw DomainError("hypersurface_cone: need n >= 2 and E >= 2");
  const auto rank = static_cast<std::size_t>(n);
  std::vector<LatticeVector> gens{unit(rank, rank - 1)};
  for (std::size_t i = 0; i + 1 < rank; ++i) gens.push_back(Integer(e) * unit(rank, i) + unit(rank, rank - 1));

  Prediction p;
  std::vector<LatticeVector> basis;
  LatticeVector last = Integer(e) * unit(rank, rank - 1);
  LatticeVector grading = Integer(n) * unit(rank, rank - 1);
  for (std::size_t i = 0; i + 1 < rank; ++i) {
    basis.push_back(unit(rank, i));
    last -= unit(rank, i);
    grading += Integer(e) * unit(rank, i);
  }
  basis.push_back(unit(rank, rank - 1));
  basis.push_back(last);
  std::sort(basis.begin(), basis.end());
  p.hilbert_basis_size = Integer(basis.size());
  p.hilbert_basis = std::move(basis);
  p.grading = std::move(grading);
  p.class_group_invariant_factors = std::vector<Integer>(rank - 1, Integer(e));
  Integer order = 1;
  for (std::size_t i = 0; i + 1 < rank; ++i) order *= e;
  p.class_group_order = order;
  p.T = std::max(Integer(n), Integer(e));
  p.f_signature = Rational(1) / Rational(order);
  p.smooth = false;

  FamilySpec spec{FamilyKind::hypersurface, {e}, {n}, std::move(p)};
  return {make_cone(rank, std::move(gens)), std::move(spec)};
}

/// Cone presenting the Segre product of Veronese rings V_{E_j, m_j}, in rank
/// d(k) = sum m_j - (k - 1).
inline FamilyInstance segre_veronese_cone(const std::vector<long long>& E, const std::vector<long long>& m) {
  if (E.empty() || E.size() != m.size()) throw DomainError("segre_veronese_cone: need equal nonempty E and m");
  for (std::size_t j = 0; j < E.size(); ++j)
    if (E[j] < 1 || m[j] < 2) throw DomainError("segre_veronese_cone: need every E_j >= 1 and m_j >= 2");
  const std::size_t k = E.size();
  // block j occupies coordinates [start[j], start[j] + m_j - 1), skipping the
  // shared coordinate m_1 - 1 (0-based)
  std::vector<std::size_t> start(k);
  const auto m1 = static_cast<std::size_t>(m[0]);
  const std::size_t shared = m1 - 1;
  std::size_t d = m1;
  start[0] = 0;
  for (std::size_t j = 1; j < k; ++j) {
    start[j] = d;
    d += static_cast<std::size_t>(m[j]) - 1;
  }
  const std::size_t rank = d;

  std::vector<LatticeVector> gens;
  for (std::size_t j = 0; j < k; ++j) {
    LatticeVector extra = Integer(E[j]) * unit(rank, shared);
    for (std::size_t l = 0; l + 1 < static_cast<std::size_t>(m[j]); ++l) {
      gens.push_back(unit(rank, start[j] + l));
      extra -= unit(rank, start[j] + l);
    }
    gens.push_back(std::move(extra));
  }

  // Basis: e*_{m_1} plus, in each block, a point of the dilated simplex of size E_j.
  std::vector<LatticeVector> basis{unit(rank, shared)};
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<LatticeVector> next;
    const std::size_t len = static_cast<std::size_t>(m[j]) - 1;
    for (const auto& b : basis) {
      // all a with sum a <= E_j over `len` coordinates
      std::vector<long long> a(len, 0);
      for (;;) {
        LatticeVector v = b;
        for (std::size_t l = 0; l < len; ++l) v[start[j] + l] += a[l];
        next.push_back(std::move(v));
        std::size_t pos = 0;
        while (pos < len) {
          ++a[pos];
          if (std::accumulate(a.begin(), a.end(), 0LL) <= E[j]) break;
          a[pos] = 0;
          ++pos;
        }
        if (pos == len) break;
      }
    }
    basis = std::move(next);
  }
  std::sort(basis.begin(), basis.end());

  Prediction p;
  const long long total = std::accumulate(E.begin(), E.end(), 0LL);
  Integer size = 1;
  for (std::size_t j = 0; j < k; ++j) size *= binomial(m[j] - 1 + E[j], E[j]);
  p.hilbert_basis_size = size;
  if (Integer(basis.size()) != size) throw InvariantError("segre_veronese_cone: basis count disagrees with binomial product");
  p.hilbert_basis = std::move(basis);
  p.grading = Integer(total) * unit(rank, shared);
  p.D = Integer(total);

  FamilySpec spec{FamilyKind::segre_veronese, E, m, std::move(p)};
  return {make_cone(rank, std::move(gens)), std::move(spec)};
}

/// E-th Veronese subring of F[x_1..x_n], as the one-factor Segre-Veronese cone.
inline FamilyInstance veronese_cone(long long e, long long n) {
  if (e < 1 || n < 2) throw DomainError("veronese_cone: need E >= 1 and n >= 2");
  FamilyInstance inst = segre_veronese_cone({e}, {n});
  inst.spec.kind = FamilyKind::veronese;
  inst.spec.predicted.D = Integer(e);
  inst.spec.predicted.hilbert_basis_size = binomial(n - 1 + e, e);
  if (e == 1) inst.spec.predicted.smooth = true;
  return inst;
}

}  // namespace toric
