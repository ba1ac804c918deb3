#pragma once
#include <map>
#include <optional>
#include <utility>

#include "toricmot/intlat.hpp"

namespace toricmot {

// Rational polyhedral cone. Rays and lineality generate it; facets and
// span equations cut it out. Both descriptions are kept consistent.
// Inequality/equation normals live in the dual lattice.
struct Cone {
  int d = 0;
  std::vector<IVec> rays;      // primitive, lex-sorted, extreme
  std::vector<IVec> lines;     // lineality basis; empty iff strictly convex
  std::vector<IVec> facets;    // irredundant inequality normals within the span
  std::vector<IVec> span_eqs;  // equations cutting out the linear span
  int dim = 0;

  bool is_pointed() const { return lines.empty(); }
  bool contains(const IVec& x) const;
  bool in_relative_interior(const IVec& x) const;
  // Sum of the primitive rays (plus nothing from lineality); lies in the
  // relative interior of a pointed cone.
  IVec interior_point() const;
  bool same_rays(const Cone& o) const { return rays == o.rays && lines == o.lines; }
};

struct GeneratorSet {
  std::vector<IVec> rays;
  std::vector<IVec> lines;
};

// Double description: generators of {x : <ineq,x> >= 0, <eq,x> = 0}.
GeneratorSet dd_generators(int d, const std::vector<IVec>& ineqs,
                           const std::vector<IVec>& eqs);

Cone cone_from_rays(int d, const std::vector<IVec>& gens,
                    const std::vector<IVec>& gen_lines = {});
Cone cone_from_inequalities(int d, const std::vector<IVec>& ineqs,
                            const std::vector<IVec>& eqs = {});
Cone intersect(const Cone& a, const Cone& b);
Cone dual_cone(const Cone& c);

// All faces including {0} and the cone itself, sorted by (dim, rays).
std::vector<Cone> faces_of(const Cone& c);

bool relative_interior_membership(const Cone& c, const IVec& v);

// Orthogonal-space description of a face: the generators of eta serve as the
// equations cutting out eta^perp in the dual space.
std::vector<IVec> face_orthogonal_equations(const Cone& sigma, const Cone& eta);

struct Fan {
  int d = 0;
  Cone support;
  std::vector<Cone> cones;  // closed under faces, sorted by (dim, rays)

  // Unique cone whose relative interior contains x; x must be in the support.
  const Cone& locate(const IVec& x) const;
};

Fan make_fan(int d, Cone support, const std::vector<Cone>& maximal);
Fan fan_intersection(const Fan& a, const Fan& b);
Fan fan_intersection(const std::vector<const Fan*>& fans);

// Convex hull of gens + recession, a polyhedron of the form conv(I) + sigma_dual.
struct NewtonPolyhedron {
  std::vector<IVec> gens;
  std::vector<IVec> vertices;
  Cone recession;  // sigma_dual

  // Support value min over vertices of <nu, v>; nu must lie in sigma.
  Int support(const IVec& nu) const;
  // Vertices lying on the face minimized by nu.
  std::vector<IVec> min_face_vertices(const IVec& nu) const;
};

// Certificate that a generator is not a vertex: convex coefficients on the
// other generators plus a recession displacement.
struct DominationCertificate {
  IVec point;
  std::vector<std::pair<IVec, Rat>> combination;
  std::vector<Rat> displacement_unused;  // kept sized to recession ray count
};

NewtonPolyhedron newton_polyhedron(const std::vector<IVec>& gens, const Cone& sigma_dual);

// Dual subdivision of sigma: maximal cones collect the nu minimizing at a
// common vertex.
Fan normal_fan(const NewtonPolyhedron& p, const Cone& sigma);

std::optional<DominationCertificate> domination_certificate(const NewtonPolyhedron& p,
                                                            const IVec& v);

}  // namespace toricmot
