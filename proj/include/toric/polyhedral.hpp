#pragma once

// Polyhedral kernels shared by the cone, Hilbert basis and volume code:
// double description, face closure and pulling triangulations.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "toric/lattice.hpp"

namespace toric {

using IndexSet = boost::dynamic_bitset<>;

inline std::vector<std::size_t> to_indices(const IndexSet& s) {
  std::vector<std::size_t> out;
  for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

/// Extreme rays of the pointed cone {w : <a, w> >= 0 for every constraint a},
/// primitivized and sorted. The constraints must span R^dim.
///
/// Double description: start from the simplicial cone cut out by a maximal
/// independent subset of constraints, then add the remaining constraints one
/// at a time, combining adjacent (+,-) ray pairs. Adjacency is decided by the
/// combinatorial test on zero sets.
inline std::vector<LatticeVector> extreme_rays(std::span<const LatticeVector> constraints, std::size_t dim) {
  const std::size_t k = constraints.size();
  if (dim == 0) return {};

  std::vector<std::size_t> basis;
  std::vector<RationalVector> basis_rows;
  for (std::size_t i = 0; i < k && basis.size() < dim; ++i) {
    auto trial = basis_rows;
    trial.push_back(to_rational(constraints[i]));
    if (rational_rank(trial) == trial.size()) {
      basis.push_back(i);
      basis_rows = std::move(trial);
    }
  }
  if (basis.size() < dim) throw PreconditionError("extreme_rays: constraints do not span the space");

  struct Ray {
    LatticeVector v;
    IndexSet zeros;
  };
  std::vector<Ray> rays;
  IndexSet processed(k);
  for (std::size_t i : basis) processed.set(i);
  for (std::size_t i = 0; i < dim; ++i) {
    RationalVector rhs(dim, Rational(0));
    rhs[i] = 1;
    auto x = solve(basis_rows, rhs);
    if (!x) throw InvariantError("extreme_rays: singular initial basis");
    Ray r{primitive_integer_multiple(*x), IndexSet(k)};
    for (std::size_t j = 0; j < dim; ++j)
      if (j != i) r.zeros.set(basis[j]);
    rays.push_back(std::move(r));
  }

  for (std::size_t c = 0; c < k; ++c) {
    if (processed.test(c)) continue;
    const LatticeVector& a = constraints[c];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = pairing(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      Ray r = rays[i];
      if (val[i] == 0) r.zeros.set(c);
      next.push_back(std::move(r));
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        IndexSet common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.is_subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        LatticeVector w = val[p] * rays[q].v - val[q] * rays[p].v;
        Ray nr{primitivize(w), common};
        nr.zeros.set(c);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
    processed.set(c);
  }

  std::vector<LatticeVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// incidences[h] = set of rays lying on hyperplane h, for every facet normal h.
inline std::vector<IndexSet> incidence_sets(std::span<const LatticeVector> rays,
                                            std::span<const LatticeVector> normals) {
  std::vector<IndexSet> out;
  out.reserve(normals.size());
  for (const auto& h : normals) {
    IndexSet s(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (pairing(h, rays[i]) == 0) s.set(i);
    out.push_back(std::move(s));
  }
  return out;
}

/// Every face of a pointed cone as the set of rays it contains: the closure of
/// the full ray set under intersection with facets. Includes {0} (empty set).
inline std::vector<IndexSet> face_closure(std::size_t num_rays, const std::vector<IndexSet>& facets) {
  std::set<IndexSet> seen;
  std::vector<IndexSet> queue;
  IndexSet all(num_rays);
  all.set();
  seen.insert(all);
  queue.push_back(all);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& f : facets) {
      IndexSet g = queue[head] & f;
      if (seen.insert(g).second) queue.push_back(g);
    }
  }
  return queue;
}

inline std::size_t rank_of_subset(std::span<const RationalVector> points, const IndexSet& subset) {
  std::vector<RationalVector> rows;
  for (std::size_t i : to_indices(subset)) rows.push_back(points[i]);
  return rational_rank(std::move(rows));
}

namespace detail {

inline void pull(std::span<const RationalVector> points, const std::vector<IndexSet>& hyperplanes,
                 const IndexSet& face, std::size_t dim, std::vector<std::vector<std::size_t>>& out) {
  if (face.count() == dim) {
    out.push_back(to_indices(face));
    return;
  }
  const std::size_t apex = face.find_first();
  std::set<IndexSet> facets;
  for (const auto& h : hyperplanes) {
    IndexSet f = face & h;
    if (f == face || f.none() || f.test(apex)) continue;
    if (facets.count(f)) continue;
    if (rank_of_subset(points, f) == dim - 1) facets.insert(f);
  }
  for (const auto& f : facets) {
    std::vector<std::vector<std::size_t>> sub;
    pull(points, hyperplanes, f, dim - 1, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace detail

/// Pulling triangulation of a pointed cone (or of a homogenized polytope) with
/// generators `points` spanning R^dim. Each simplex lists `dim` point indices.
/// `hyperplanes` holds the incidence set of every facet-defining hyperplane.
inline std::vector<std::vector<std::size_t>> pulling_triangulation(std::span<const RationalVector> points,
                                                                   const std::vector<IndexSet>& hyperplanes,
                                                                   std::size_t dim) {
  std::vector<std::vector<std::size_t>> out;
  if (points.empty()) return out;
  IndexSet all(points.size());
  all.set();
  detail::pull(points, hyperplanes, all, dim, out);
  return out;
}

}  // namespace toric
