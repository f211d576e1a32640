#pragma once

// Rational polyhedral cones: rays, dual rays, faces, classification and the
// reduction of a pointed cone to a full-dimensional one.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

/// A pointed rational polyhedral cone C = Cone(G) in N_R = R^ambient_rank.
///
/// Immutable; copies share state. Rays are the primitive extreme-ray
/// generators of C sorted lexicographically. dual_rays are the primitive
/// extreme-ray generators of C^v and are only populated when C is full.
class Cone {
 public:
  std::size_t ambient_rank() const noexcept { return d_->ambient_rank; }
  std::size_t dim() const noexcept { return d_->dim; }
  bool is_full() const noexcept { return d_->dim == d_->ambient_rank; }

  const std::vector<LatticeVector>& generators() const noexcept { return d_->generators; }
  const std::vector<LatticeVector>& rays() const noexcept { return d_->rays; }
  const std::vector<LatticeVector>& dual_rays() const noexcept { return d_->dual_rays; }

  /// v_C, the sum of the primitive ray generators.
  const LatticeVector& ray_sum() const noexcept { return d_->ray_sum; }

  /// m in C^v, i.e. <m, u> >= 0 for every ray u.
  bool dual_contains(const LatticeVector& m) const {
    for (const auto& u : d_->rays)
      if (pairing(m, u) < 0) return false;
    return true;
  }

  /// v in C. Requires a full cone (uses the facet normals).
  bool contains(const LatticeVector& v) const {
    require_full("Cone::contains");
    for (const auto& w : d_->dual_rays)
      if (pairing(w, v) < 0) return false;
    return true;
  }

  void require_full(const char* what) const {
    if (!is_full())
      throw NotFullError(std::string(what) + ": cone is not full-dimensional; use reduce_to_full_pointed first");
  }

  friend Cone make_cone(std::size_t ambient_rank, std::vector<LatticeVector> generators);

 private:
  struct Data {
    std::size_t ambient_rank = 0;
    std::size_t dim = 0;
    std::vector<LatticeVector> generators;
    std::vector<LatticeVector> rays;
    std::vector<LatticeVector> dual_rays;
    LatticeVector ray_sum;
  };
  explicit Cone(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

namespace detail {

struct SpanData {
  SaturatedSpan span;
  std::vector<LatticeVector> coords;     // generators in the span basis
  std::vector<LatticeVector> dual_rays;  // of the full cone in the span, span-dual coordinates
  std::vector<LatticeVector> rays;       // in span coordinates
};

inline LatticeVector from_span_coords(const SaturatedSpan& span, const LatticeVector& x, std::size_t ambient_rank) {
  LatticeVector v(ambient_rank);
  for (std::size_t i = 0; i < span.rank; ++i) v += x[i] * span.basis[i];
  return v;
}

inline SpanData analyze_generators(std::size_t ambient_rank, const std::vector<LatticeVector>& generators) {
  if (ambient_rank == 0) throw DegenerateInputError("cone: ambient rank must be positive");
  if (generators.empty()) throw DegenerateInputError("cone: empty generator list");
  for (const auto& g : generators) {
    if (g.rank() != ambient_rank) throw DimensionError("cone: generator " + g.str() + " has wrong rank");
    if (g.is_zero()) throw DegenerateInputError("cone: zero generator");
  }
  SpanData out;
  out.span = saturate_span(generators, ambient_rank);
  const std::size_t d = out.span.rank;
  for (const auto& g : generators) {
    auto x = coordinates_in_hnf_basis(out.span.basis, g);
    if (!x) throw InvariantError("cone: generator outside its own saturated span");
    out.coords.push_back(std::move(*x));
  }
  out.dual_rays = extreme_rays(out.coords, d);

  std::vector<RationalVector> dual_rows;
  for (const auto& w : out.dual_rays) dual_rows.push_back(to_rational(w));
  if (rational_rank(dual_rows) < d) {
    // C^v is not full, so C contains its orthogonal complement.
    std::vector<LatticeVector> ker;
    if (out.dual_rays.empty()) {
      ker.push_back(IntegerMatrix::identity(d).column(0));
    } else {
      ker = integer_kernel(IntegerMatrix::from_rows(out.dual_rays, d));
    }
    LatticeVector line = primitivize(from_span_coords(out.span, ker.front(), ambient_rank));
    throw NotPointedError("cone is not pointed: it contains the line spanned by " + line.str(), line.str());
  }
  out.rays = extreme_rays(out.dual_rays, d);
  return out;
}

}  // namespace detail

/// Builds C = Cone(generators). Rejects cones containing a line.
inline Cone make_cone(std::size_t ambient_rank, std::vector<LatticeVector> generators) {
  detail::SpanData sd = detail::analyze_generators(ambient_rank, generators);
  auto data = std::make_shared<Cone::Data>();
  data->ambient_rank = ambient_rank;
  data->dim = sd.span.rank;
  data->generators = std::move(generators);
  for (const auto& x : sd.rays) data->rays.push_back(detail::from_span_coords(sd.span, x, ambient_rank));
  std::sort(data->rays.begin(), data->rays.end());
  if (data->dim == ambient_rank) {
    // span basis is the identity here
    data->dual_rays = std::move(sd.dual_rays);
    std::sort(data->dual_rays.begin(), data->dual_rays.end());
  }
  data->ray_sum = sum(data->rays, ambient_rank);
  return Cone(std::move(data));
}

/// The dual cone generated by the dual rays. Requires a full pointed cone.
inline Cone dual_cone(const Cone& c) {
  c.require_full("dual_cone");
  return make_cone(c.ambient_rank(), c.dual_rays());
}

struct ConeClassification {
  bool pointed = true;
  bool full = false;
  bool simplicial = false;
  bool smooth = false;
};

inline ConeClassification classify(const Cone& c) {
  ConeClassification k;
  k.pointed = true;  // enforced by make_cone
  k.full = c.is_full();
  k.simplicial = c.rays().size() == c.dim();
  if (k.simplicial) {
    auto snf = smith_normal_form(IntegerMatrix::from_columns(c.rays(), c.ambient_rank()));
    k.smooth = std::all_of(snf.diag.begin(), snf.diag.end(), [](const Integer& d) { return d == 1; });
  }
  return k;
}

/// A face F of a cone: its primitive generators G_F (as indices into the
/// parent's ray list and as vectors), v_F = sum of G_F, and a functional of
/// the dual cone vanishing exactly on F.
struct FaceDescriptor {
  IndexSet ray_indices;
  std::vector<LatticeVector> generators;
  LatticeVector face_sum;
  std::size_t dim = 0;
  LatticeVector supporting_functional;

  bool is_zero_face() const { return ray_indices.none(); }
};

namespace detail {

inline FaceDescriptor make_face(std::span<const LatticeVector> rays, std::span<const LatticeVector> normals,
                                const IndexSet& members, std::size_t ambient_rank) {
  FaceDescriptor f;
  f.ray_indices = members;
  std::vector<RationalVector> rows;
  for (std::size_t i : to_indices(members)) {
    f.generators.push_back(rays[i]);
    rows.push_back(to_rational(rays[i]));
  }
  f.face_sum = sum(f.generators, ambient_rank);
  f.dim = rational_rank(std::move(rows));
  f.supporting_functional = LatticeVector(ambient_rank);
  for (const auto& w : normals) {
    bool vanishes = true;
    for (const auto& g : f.generators)
      if (pairing(w, g) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) f.supporting_functional += w;
  }
  return f;
}

inline bool face_order(const FaceDescriptor& a, const FaceDescriptor& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return to_indices(a.ray_indices) < to_indices(b.ray_indices);
}

}  // namespace detail

/// Every face of a full pointed cone, from {0} to C, ordered by dimension and
/// then by ray indices. Faces are the zero sets of sums of dual rays.
inline std::vector<FaceDescriptor> enumerate_faces(const Cone& c) {
  c.require_full("enumerate_faces");
  auto facets = incidence_sets(c.rays(), c.dual_rays());
  std::vector<FaceDescriptor> faces;
  for (const auto& members : face_closure(c.rays().size(), facets))
    faces.push_back(detail::make_face(c.rays(), c.dual_rays(), members, c.ambient_rank()));
  std::sort(faces.begin(), faces.end(), detail::face_order);
  return faces;
}

/// The face F* of C^v dual to F; its ray indices refer to c.dual_rays().
inline FaceDescriptor dual_face(const Cone& c, const FaceDescriptor& f) {
  c.require_full("dual_face");
  IndexSet members(c.dual_rays().size());
  for (std::size_t i = 0; i < c.dual_rays().size(); ++i) {
    bool vanishes = true;
    for (const auto& g : f.generators)
      if (pairing(c.dual_rays()[i], g) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) members.set(i);
  }
  return detail::make_face(c.dual_rays(), c.rays(), members, c.ambient_rank());
}

/// Face of c whose primitive generators are exactly `generators` (any order).
inline FaceDescriptor face_spanned_by(const Cone& c, std::span<const LatticeVector> generators) {
  for (auto& f : enumerate_faces(c)) {
    if (f.generators.size() != generators.size()) continue;
    if (std::all_of(generators.begin(), generators.end(), [&](const LatticeVector& g) {
          return std::find(f.generators.begin(), f.generators.end(), g) != f.generators.end();
        }))
      return f;
  }
  throw DomainError("face_spanned_by: no face with the given generators");
}

struct FullPointedReduction {
  Cone cone;                 // full cone in the saturated span, rank = dim C
  std::size_t laurent_rank;  // ambient_rank - dim C
  IntegerMatrix embedding;   // ambient_rank x dim; columns are the span basis
};

/// Re-expresses a pointed cone as a full cone in N' = span(C) cap N.
inline FullPointedReduction reduce_to_full_pointed(std::size_t ambient_rank, const std::vector<LatticeVector>& generators) {
  detail::SpanData sd = detail::analyze_generators(ambient_rank, generators);
  const std::size_t d = sd.span.rank;
  IntegerMatrix embedding = IntegerMatrix::from_columns(sd.span.basis, ambient_rank);
  return FullPointedReduction{make_cone(d, std::move(sd.coords)), ambient_rank - d, std::move(embedding)};
}

}  // namespace toric
