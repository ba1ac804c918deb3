#include <doctest.h>

#include <random>

#include "toricmot/polycone.hpp"

using namespace toricmot;

namespace {

IVec v2(long a, long b) { return {Int(a), Int(b)}; }
IVec v3(long a, long b, long c) { return {Int(a), Int(b), Int(c)}; }

Cone first_orthant(int d) {
  std::vector<IVec> rays;
  for (int i = 0; i < d; ++i) {
    IVec e(d, Int(0));
    e[i] = 1;
    rays.push_back(e);
  }
  return cone_from_rays(d, rays);
}

}  // namespace

TEST_CASE("dual cone basics") {
  Cone q = first_orthant(2);
  Cone dq = dual_cone(q);
  CHECK(dq.same_rays(q));  // self-dual

  Cone ray = cone_from_rays(2, {v2(1, 0)});
  Cone half = dual_cone(ray);
  CHECK(half.dim == 2);
  CHECK(half.lines.size() == 1);  // half-plane x >= 0
  CHECK(half.contains(v2(1, 5)));
  CHECK(half.contains(v2(1, -5)));
  CHECK_FALSE(half.contains(v2(-1, 0)));

  Cone c = cone_from_rays(2, {v2(2, 5), v2(3, 5)});
  Cone dc = dual_cone(c);
  std::vector<IVec> expect = {v2(-5, 3), v2(5, -2)};
  CHECK(dc.rays == expect);
}

TEST_CASE("dual is an involution on pointed full-dimensional cones") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<IVec> gens;
      for (int k = 0; k < d + 2; ++k) {
        IVec g(d);
        for (int i = 0; i < d; ++i) g[i] = coord(rng);
        // push into a halfspace to keep the cone pointed
        g[0] = abs(g[0]) + 1;
        gens.push_back(g);
      }
      Cone c = cone_from_rays(d, gens);
      if (!c.is_pointed()) continue;
      Cone dd = dual_cone(dual_cone(c));
      CHECK(dd.same_rays(c));
    }
  }
}

TEST_CASE("faces of cones") {
  Cone q = first_orthant(2);
  auto f2 = faces_of(q);
  CHECK(f2.size() == 4);  // {0}, two rays, itself

  Cone ray = cone_from_rays(2, {v2(2, 5)});
  auto fr = faces_of(ray);
  CHECK(fr.size() == 2);

  Cone q3 = first_orthant(3);
  auto f3 = faces_of(q3);
  CHECK(f3.size() == 8);
}

TEST_CASE("relative interior membership") {
  Cone q = first_orthant(2);
  CHECK_FALSE(q.in_relative_interior(v2(0, 0)));
  CHECK(q.in_relative_interior(v2(1, 1)));
  CHECK_FALSE(q.in_relative_interior(v2(1, 0)));
  Cone ray = cone_from_rays(2, {v2(2, 5)});
  CHECK(ray.in_relative_interior(v2(2, 5)));
  CHECK(ray.in_relative_interior(v2(4, 10)));
  CHECK_FALSE(ray.in_relative_interior(v2(3, 5)));
}

TEST_CASE("newton polyhedron vertices for the surface data") {
  Cone q = first_orthant(2);
  auto p = newton_polyhedron({v2(5, 0), v2(0, 2), v2(0, 3), v2(6, 2)}, q);
  CHECK(p.vertices == std::vector<IVec>{v2(0, 2), v2(5, 0)});

  auto single = newton_polyhedron({v2(3, 4)}, q);
  CHECK(single.vertices == std::vector<IVec>{v2(3, 4)});

  // (1,1) is the midpoint of the other two, hence not a vertex
  auto mid = newton_polyhedron({v2(2, 0), v2(1, 1), v2(0, 2)}, q);
  CHECK(mid.vertices == std::vector<IVec>{v2(0, 2), v2(2, 0)});
  auto tri = newton_polyhedron({v2(3, 0), v2(1, 1), v2(0, 3)}, q);
  CHECK(tri.vertices.size() == 3);
}

TEST_CASE("support function values") {
  Cone q = first_orthant(2);
  auto p = newton_polyhedron({v2(5, 0), v2(0, 2), v2(0, 3), v2(6, 2)}, q);
  CHECK(p.support(v2(1, 1)) == 2);   // min of 5,2,3,8
  CHECK(p.support(v2(2, 5)) == 10);  // min of 10,10,15,22
  CHECK(p.support(v2(0, 0)) == 0);
}

TEST_CASE("normal fans of the combination ideals") {
  Cone sd = first_orthant(2);
  Cone sigma = dual_cone(sd);

  auto c1 = newton_polyhedron({v2(5, 0), v2(0, 2), v2(0, 3), v2(6, 2)}, sd);
  Fan t1 = normal_fan(c1, sigma);
  bool has_25 = false;
  for (const auto& c : t1.cones)
    if (c.dim == 1 && c.rays == std::vector<IVec>{v2(2, 5)}) has_25 = true;
  CHECK(has_25);

  // pairwise sums of the generators
  auto c2 = newton_polyhedron({v2(5, 2), v2(5, 3), v2(11, 2), v2(0, 5), v2(6, 4), v2(6, 5)}, sd);
  CHECK(c2.vertices == std::vector<IVec>{v2(0, 5), v2(5, 2)});
  Fan t2 = normal_fan(c2, sigma);
  Fan t12 = fan_intersection(t1, t2);
  int maximal = 0;
  bool has_35 = false;
  for (const auto& c : t12.cones) {
    if (c.dim == 2) ++maximal;
    if (c.dim == 1 && c.rays == std::vector<IVec>{v2(3, 5)}) has_35 = true;
  }
  CHECK(maximal == 3);
  CHECK(has_35);

  // idempotence
  Fan tt = fan_intersection(t1, t1);
  CHECK(tt.cones.size() == t1.cones.size());
}

TEST_CASE("fan intersection refines both inputs") {
  Cone sd = first_orthant(2);
  Cone sigma = dual_cone(sd);
  auto pa = newton_polyhedron({v2(5, 0), v2(0, 2), v2(0, 3), v2(6, 2)}, sd);
  auto pb = newton_polyhedron({v2(5, 2), v2(5, 3), v2(11, 2), v2(0, 5), v2(6, 4), v2(6, 5)}, sd);
  Fan fa = normal_fan(pa, sigma), fb = normal_fan(pb, sigma);
  Fan fi = fan_intersection(fa, fb);
  for (const auto& c : fi.cones) {
    if (c.dim == 0) continue;
    IVec x = c.interior_point();
    const Cone& ina = fa.locate(x);
    const Cone& inb = fb.locate(x);
    for (const auto& r : c.rays) {
      CHECK(ina.contains(r));
      CHECK(inb.contains(r));
    }
  }
}

TEST_CASE("third ideal fan introduces ray (1,6)") {
  Cone sd = first_orthant(2);
  Cone sigma = dual_cone(sd);
  auto c3 = newton_polyhedron({v2(5, 5), v2(11, 4), v2(11, 5), v2(6, 7)}, sd);
  CHECK(c3.vertices == std::vector<IVec>{v2(5, 5), v2(11, 4)});
  Fan t3 = normal_fan(c3, sigma);
  bool has_16 = false;
  for (const auto& c : t3.cones)
    if (c.dim == 1 && c.rays == std::vector<IVec>{v2(1, 6)}) has_16 = true;
  CHECK(has_16);
}

TEST_CASE("face orthogonal equations") {
  Cone sigma = first_orthant(2);
  Cone zero = cone_from_rays(2, {});
  CHECK(face_orthogonal_equations(sigma, zero).empty());
  CHECK(face_orthogonal_equations(sigma, sigma).size() == 2);
  Cone ray = cone_from_rays(2, {v2(1, 0)});
  auto eqs = face_orthogonal_equations(sigma, ray);
  REQUIRE(eqs.size() == 1);
  CHECK(dot(eqs[0], v2(0, 7)) == 0);
  Cone notface = cone_from_rays(2, {v2(1, 1)});
  CHECK_THROWS_AS(face_orthogonal_equations(sigma, notface), std::invalid_argument);
}

TEST_CASE("superadditivity of support functions on sampled points") {
  Cone sd = first_orthant(2);
  auto p = newton_polyhedron({v2(5, 0), v2(0, 2), v2(0, 3), v2(6, 2)}, sd);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(0, 9);
  for (int t = 0; t < 200; ++t) {
    IVec a = v2(coord(rng), coord(rng)), b = v2(coord(rng), coord(rng));
    CHECK(p.support(a) + p.support(b) <= p.support(vadd(a, b)));
  }
}

TEST_CASE("domination certificates exist exactly for non-vertices") {
  Cone q = first_orthant(2);
  auto p = newton_polyhedron({v2(5, 0), v2(0, 2), v2(0, 3), v2(6, 2)}, q);
  CHECK(domination_certificate(p, v2(0, 3)).has_value());
  CHECK(domination_certificate(p, v2(6, 2)).has_value());
  CHECK_FALSE(domination_certificate(p, v2(5, 0)).has_value());
  CHECK_FALSE(domination_certificate(p, v2(0, 2)).has_value());

  auto cert = domination_certificate(p, v2(6, 2));
  Rat total(0);
  IVec combo = v2(0, 0);
  for (auto& [w, lam] : cert->combination) total += lam;
  CHECK(total == 1);
}

TEST_CASE("three dimensional normal fan sanity") {
  Cone q3 = first_orthant(3);
  Cone sigma = dual_cone(q3);
  auto p = newton_polyhedron({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}, q3);
  CHECK(p.vertices.size() == 3);
  Fan f = normal_fan(p, sigma);
  int maximal = 0;
  for (const auto& c : f.cones)
    if (c.dim == 3) ++maximal;
  CHECK(maximal == 3);
}
