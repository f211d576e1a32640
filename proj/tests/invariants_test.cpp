#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace toric;
using namespace toric::testing;

namespace {

Cone segre() { return make_cone(3, vecs({{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}})); }
Cone orthant(std::size_t n) {
  std::vector<LatticeVector> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(unit(n, i));
  return make_cone(n, g);
}

// Area of {w in R^2 : 0 <= <w, u> <= 1} by vertex enumeration and the shoelace formula.
Rational shoelace_area(const std::vector<LatticeVector>& rays) {
  std::vector<std::pair<Rational, Rational>> verts;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
          const Rational p(rays[i][0]), q(rays[i][1]), r(rays[j][0]), s(rays[j][1]);
          const Rational det = p * s - q * r;
          if (det == 0) continue;
          Rational x = (Rational(a) * s - q * Rational(b)) / det;
          Rational y = (p * Rational(b) - Rational(a) * r) / det;
          bool ok = true;
          for (const auto& u : rays) {
            Rational t = x * Rational(u[0]) + y * Rational(u[1]);
            ok = ok && t >= 0 && t <= 1;
          }
          if (ok && std::find(verts.begin(), verts.end(), std::pair{x, y}) == verts.end()) verts.emplace_back(x, y);
        }
  Rational cx = 0, cy = 0;
  for (const auto& [x, y] : verts) {
    cx += x;
    cy += y;
  }
  cx /= verts.size();
  cy /= verts.size();
  std::sort(verts.begin(), verts.end(), [&](const auto& a, const auto& b) {
    return std::atan2(static_cast<double>(a.second - cy), static_cast<double>(a.first - cx)) <
           std::atan2(static_cast<double>(b.second - cy), static_cast<double>(b.first - cx));
  });
  Rational area = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& [x1, y1] = verts[i];
    const auto& [x2, y2] = verts[(i + 1) % verts.size()];
    area += x1 * y2 - x2 * y1;
  }
  return area < 0 ? Rational(-area / 2) : Rational(area / 2);
}

// Order of e_j in Z^k / image(m -> (<m, u_i>)_i), for a full simplicial cone.
Integer brute_ray_order(const Cone& c, std::size_t j) {
  const std::size_t n = c.ambient_rank();
  std::vector<RationalVector> rows;
  for (const auto& u : c.rays()) rows.push_back(to_rational(u));
  RationalVector e(n, Rational(0));
  e[j] = 1;
  auto m = solve(rows, e);
  Integer order = 1;
  for (const auto& x : *m) order = lcm(order, boost::multiprecision::denominator(x));
  return order;
}

}  // namespace

TEST(Multipliers, D) {
  for (long long e = 1; e <= 5; ++e)
    for (long long n = 2; n <= 3; ++n) EXPECT_EQ(compute_D(hilbert_basis(veronese_cone(e, n).cone)), e);
  EXPECT_EQ(compute_D(hilbert_basis(segre())), 2);
  for (long long n = 2; n <= 4; ++n)
    for (long long e = 2; e <= 3; ++e)
      EXPECT_EQ(compute_D(hilbert_basis(hypersurface_cone(n, e).cone)), std::max(n, e));
}

TEST(Multipliers, Dprime) {
  Cone s = segre();
  auto b = hilbert_basis(s);
  for (const auto& f : enumerate_faces(s)) {
    if (f.is_zero_face()) {
      EXPECT_THROW(compute_Dprime(b, f), DomainError);
      continue;
    }
    const Integer dp = compute_Dprime(b, f);
    if (f.dim == 1) EXPECT_EQ(dp, 1);
    if (f.dim == 3) EXPECT_EQ(dp, compute_D(b));
    EXPECT_LE(dp, compute_D(b));
  }
  EXPECT_EQ(compute_Dprime(b, face_spanned_by(s, vecs({{1, 0, 0}, {0, 1, 0}}))), 2);
}

TEST(ClassGroup, Examples) {
  for (long long n = 2; n <= 4; ++n)
    for (long long e = 2; e <= 3; ++e) {
      auto cg = class_group(hypersurface_cone(n, e).cone);
      EXPECT_EQ(cg.free_rank, 0u);
      EXPECT_EQ(cg.invariant_factors, std::vector<Integer>(static_cast<std::size_t>(n - 1), Integer(e)));
      Integer order = 1;
      for (long long i = 1; i < n; ++i) order *= e;
      EXPECT_EQ(cg.order, order);
      EXPECT_EQ(cg.exponent(), Integer(e));
    }
  EXPECT_TRUE(class_group(orthant(3)).trivial());
  auto s = class_group(segre());
  EXPECT_EQ(s.free_rank, 1u);
  EXPECT_TRUE(s.invariant_factors.empty());
  EXPECT_FALSE(s.order.has_value());
}

TEST(ClassGroup, RayOrders) {
  Cone h = make_cone(2, vecs({{0, 1}, {2, 1}}));
  EXPECT_EQ(ray_class_order(h, 0), 2);
  EXPECT_EQ(ray_class_order(h, 1), 2);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ray_class_order(orthant(3), j), 1);
  for (long long e = 2; e <= 5; ++e) {
    Cone v = veronese_cone(e, 2).cone;
    EXPECT_EQ(class_group(v).order, Integer(e));
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(Integer(e) % ray_class_order(v, j), 0);
  }
  EXPECT_THROW(ray_class_order(segre(), 0), PreconditionError);
}

TEST(MultipliersTU, Examples) {
  auto hb = [](const Cone& c) { return hilbert_basis(c); };
  for (long long n = 2; n <= 4; ++n)
    for (long long e = 2; e <= 5; ++e) {
      Cone c = hypersurface_cone(n, e).cone;
      EXPECT_EQ(compute_T(hb(c), class_group(c)), std::max(Integer(n), Integer(e))) << n << "," << e;
    }
  Cone h32 = hypersurface_cone(3, 2).cone;
  EXPECT_EQ(compute_U(hb(h32), class_group(h32)), 12);
  Cone v22 = veronese_cone(2, 2).cone;
  EXPECT_EQ(compute_U(hb(v22), class_group(v22)), 2);
  EXPECT_EQ(compute_T(hb(orthant(3)), class_group(orthant(3))), 1);
  EXPECT_EQ(compute_U(hb(orthant(3)), class_group(orthant(3))), 1);
  EXPECT_FALSE(compute_T(hb(segre()), class_group(segre())).has_value());
  EXPECT_FALSE(compute_U(hb(segre()), class_group(segre())).has_value());
}

TEST(SharpB, Examples) {
  for (long long e = 1; e <= 5; ++e) EXPECT_EQ(compute_B_sharp(veronese_cone(e, 2).cone), e);
  EXPECT_EQ(compute_B_sharp(make_cone(2, vecs({{0, 1}, {2, 1}}))), 2);
  EXPECT_EQ(compute_B_sharp(orthant(3)), 1);
}

TEST(FSignature, Examples) {
  EXPECT_EQ(f_signature(orthant(3)).value, 1);
  EXPECT_EQ(f_signature(make_cone(2, vecs({{0, 1}, {2, 1}}))).value, Rational(1, 2));
  auto s = f_signature(segre());
  EXPECT_EQ(s.value, Rational(2, 3));
  EXPECT_FALSE(s.simplicial_check.has_value());
  for (long long n = 2; n <= 4; ++n)
    for (long long e = 2; e <= 3; ++e) {
      Integer order = 1;
      for (long long i = 1; i < n; ++i) order *= e;
      EXPECT_EQ(f_signature(hypersurface_cone(n, e).cone).value, Rational(1) / Rational(order));
    }
}

TEST(FSignature, MatchesShoelaceInRankTwo) {
  RandomCones gen(31);
  for (int t = 0; t < 40; ++t) {
    Cone c = gen.full_pointed(2, 6, 0);
    EXPECT_EQ(f_signature(c).value, shoelace_area(c.rays()));
  }
}

// Properties over random cones ---------------------------------------------------

TEST(InvariantProperties, RandomCones) {
  RandomCones gen(8080);
  for (int t = 0; t < 40; ++t) {
    Cone c = gen.full_pointed(t % 2 ? 3 : 2, 4, 2);
    auto b = hilbert_basis(c);
    auto cg = class_group(c);
    auto k = classify(c);
    auto fs = f_signature(c);
    EXPECT_GT(fs.value, 0);
    EXPECT_LE(fs.value, 1);
    EXPECT_EQ(fs.value == 1, k.smooth);
    EXPECT_EQ(cg.free_rank, c.rays().size() - c.ambient_rank());
    EXPECT_EQ(cg.order.has_value(), k.simplicial);
    EXPECT_EQ(compute_T(b, cg).has_value(), k.simplicial);
    EXPECT_EQ(compute_U(b, cg).has_value(), k.simplicial);
    const Integer B = compute_B_sharp(c), D = compute_D(b);
    EXPECT_LE(B, D);
    if (k.simplicial) {
      Integer prod = 1;
      for (const auto& d : cg.invariant_factors) prod *= d;
      EXPECT_EQ(cg.order, prod);
      EXPECT_EQ(*cg.order, boost::multiprecision::abs(determinant(IntegerMatrix::from_rows(c.rays(), c.ambient_rank()))));
      EXPECT_EQ(fs.value * Rational(*cg.order), 1);
      EXPECT_EQ(fs.simplicial_check, fs.value);
      const Integer T = *compute_T(b, cg), U = *compute_U(b, cg);
      EXPECT_LE(D, T);
      EXPECT_LE(T, U);
      for (std::size_t j = 0; j < c.rays().size(); ++j) EXPECT_EQ(ray_class_order(c, j), brute_ray_order(c, j));
    }
    for (const auto& f : enumerate_faces(c))
      if (!f.is_zero_face()) EXPECT_LE(compute_Dprime(b, f), D);
  }
}

TEST(InvariantProperties, SurfacesAreSimplicialWithCyclicClassGroup) {
  RandomCones gen(9090);
  for (int t = 0; t < 40; ++t) {
    Cone c = gen.full_pointed(2, 6, 3);
    EXPECT_TRUE(classify(c).simplicial);
    EXPECT_LE(class_group(c).invariant_factors.size(), 1u);
  }
}

TEST(InvariantProperties, SmoothCones) {
  RandomCones gen(1212);
  for (int t = 0; t < 15; ++t) {
    Cone c = gen.unimodular(t % 2 ? 3 : 2);
    auto b = hilbert_basis(c);
    auto cg = class_group(c);
    EXPECT_EQ(compute_D(b), 1);
    EXPECT_EQ(compute_T(b, cg), 1);
    EXPECT_EQ(compute_U(b, cg), 1);
    EXPECT_EQ(compute_B_sharp(c), 1);
    EXPECT_TRUE(cg.trivial());
    EXPECT_EQ(f_signature(c).value, 1);
    auto faces = enumerate_faces(c);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].is_zero_face()) continue;
      for (const auto& v : verify_containment(c, b, faces[i], i, 4, Integer(1))) EXPECT_TRUE(v.passed);
    }
  }
}

// Verification drivers -----------------------------------------------------------

TEST(VerifyContainment, CorpusPasses) {
  std::vector<Cone> cones{segre(), orthant(3), hypersurface_cone(3, 2).cone, veronese_cone(3, 2).cone,
                          segre_veronese_cone({2, 1}, {2, 2}).cone};
  for (const auto& c : cones) {
    auto b = hilbert_basis(c);
    auto faces = enumerate_faces(c);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].is_zero_face()) continue;
      auto verdicts = verify_containment(c, b, faces[i], i, 3);
      EXPECT_EQ(verdicts.size(), 6u);
      for (const auto& v : verdicts) {
        EXPECT_TRUE(v.passed) << "face " << i << " r=" << v.r << " " << v.label;
        EXPECT_EQ(v.exponent, v.multiplier * (v.r - 1) + 1);
      }
    }
  }
}

TEST(VerifyContainment, SegreMultiplierOneFails) {
  Cone s = segre();
  auto b = hilbert_basis(s);
  auto faces = enumerate_faces(s);
  auto f = face_spanned_by(s, vecs({{1, 0, 0}, {0, 1, 0}}));
  std::size_t idx = 0;
  while (to_indices(faces[idx].ray_indices) != to_indices(f.ray_indices)) ++idx;
  auto verdicts = verify_containment(s, b, f, idx, 2, Integer(1));
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_TRUE(verdicts[0].passed);
  EXPECT_FALSE(verdicts[1].passed);
  EXPECT_EQ(verdicts[1].witness, (LatticeVector{1, 1, -1}));
  EXPECT_TRUE(verdicts[1].witness_in_symbolic_power);
  EXPECT_THROW(verify_containment(s, b, f, idx, 0), DomainError);
}

TEST(VerifySharpness, Examples) {
  auto v3 = veronese_cone(3, 2).cone;
  auto w = verify_sharpness(v3, hilbert_basis(v3));
  EXPECT_EQ(w.B, 3);
  EXPECT_TRUE(w.valid());

  Cone h = make_cone(2, vecs({{0, 1}, {2, 1}}));
  // both dual rays pair to 2 with v_C, so either ray carries a witness
  auto hb = hilbert_basis(h);
  auto wh = verify_sharpness(h, hb);
  EXPECT_EQ(wh.B, 2);
  EXPECT_TRUE(wh.valid());
  EXPECT_TRUE(as_set(h.dual_rays()).count(wh.dual_ray));
  PrimePowers p21(monomial_prime(h, hb, face_spanned_by(h, vecs({{2, 1}}))));
  EXPECT_TRUE(symbolic_membership(p21, 2, LatticeVector{1, 0}));
  EXPECT_FALSE(membership(p21.power(2), LatticeVector{1, 0}));

  auto wo = verify_sharpness(orthant(2), hilbert_basis(orthant(2)));
  EXPECT_EQ(wo.B, 1);
  EXPECT_TRUE(wo.valid());

  EXPECT_THROW(verify_sharpness(segre(), hilbert_basis(segre())), PreconditionError);
}

TEST(SymbolicMembership, LayeredSearchAgreesWithPowers) {
  RandomCones gen(6060);
  for (int t = 0; t < 12; ++t) {
    Cone c = gen.full_pointed(t % 2 ? 3 : 2, 3, 1);
    auto b = hilbert_basis(c);
    auto pts = enumerate_semigroup(b, 8);
    for (const auto& f : enumerate_faces(c)) {
      if (f.is_zero_face()) continue;
      auto p = monomial_prime(c, b, f);
      for (long long e = 1; e <= 4; ++e) {
        auto pe = ideal_power(p, e);
        for (const auto& l : pts)
          EXPECT_EQ(symbolic_witness(p, e, l).has_value(), symbolic_witness(pe, p, l).has_value());
      }
    }
  }
}

TEST(VerifySharpness, RandomSimplicialCones) {
  RandomCones gen(4545);
  for (int t = 0; t < 20; ++t) {
    Cone c = gen.full_pointed(t % 2 ? 3 : 2, 4, 0);
    if (!classify(c).simplicial) continue;
    auto w = verify_sharpness(c, hilbert_basis(c));
    EXPECT_TRUE(w.valid()) << "cone " << t;
    EXPECT_EQ(w.B, compute_B_sharp(c));
  }
}
