#pragma once
#include "toricmot/polycone.hpp"

namespace toricmot {

// A finitely generated sub-semigroup of Z^d with strictly convex full
// dimensional cone. The trivial semigroup (d == 0) marks the apex face.
struct SemigroupData {
  int d = 0;
  std::vector<IVec> gens;  // minimal generators, input order
  Cone cone_dual;          // R>=0 Lambda in M
  Cone cone;               // its dual in N
  bool is_saturated = false;

  bool is_trivial() const { return d == 0 || gens.empty(); }
  int n() const { return int(gens.size()); }
};

// Full validation: distinct nonzero generators, strictly convex full
// dimensional cone, lattice generation, minimality (witness reported).
SemigroupData build_semigroup(int d, const std::vector<IVec>& gens, bool saturated = false);

// Geometry only; skips lattice-generation and minimality checks. Used for
// sub-semigroups studied inside a bigger lattice.
SemigroupData make_semigroup_unchecked(int d, std::vector<IVec> gens, bool saturated = false);

// Membership in the semigroup (nonnegative integer combination), with the
// combination reported on request.
bool semigroup_contains(const SemigroupData& s, const IVec& target,
                        std::vector<Int>* combo = nullptr);

// Sums of j distinct generators, deduplicated.
std::vector<IVec> combination_ideal(const SemigroupData& s, int j);

// Sums of l distinct generators that are linearly independent.
std::vector<IVec> log_jacobian_ideal(const SemigroupData& s, int l);

// Newton polyhedra, dual subdivisions and piecewise linear data of the two
// ideal families.
struct IdealFamily {
  SemigroupData sg;
  std::vector<std::vector<IVec>> csum;  // csum[j-1] generates the j-th sum ideal
  std::vector<std::vector<IVec>> jac;
  std::vector<NewtonPolyhedron> cpoly, jpoly;
  std::vector<Fan> theta, sigma_l;        // dual subdivisions per ideal
  std::vector<Fan> theta_cap, sigma_cap;  // prefix intersections

  int n() const { return int(sg.gens.size()); }
  int dim() const { return sg.d; }
  Int ord_c(int j, const IVec& nu) const;  // j in 0..n
  Int ord_jac(int l, const IVec& nu) const;
  ExtInt phi(int j, const IVec& nu) const;      // j in 0..n+1, phi_{n+1} infinite
  ExtInt phi_jac(int l, const IVec& nu) const;  // l in 0..d+1
};

IdealFamily phi_sequences(const SemigroupData& s);

std::vector<Cone> semigroup_faces(const SemigroupData& s);

// Generators lying on eta^perp, rewritten in a basis of the lattice they
// generate. eta == sigma yields the trivial semigroup. The change of basis
// (rows = basis of the sub-lattice) is reported on request.
SemigroupData face_semigroup(const SemigroupData& s, const Cone& eta,
                             std::vector<IVec>* basis_out = nullptr);

// Minimal generating set of C cap Z^d for a pointed full-dimensional cone.
std::vector<IVec> hilbert_basis(const Cone& c);

// Debug utility: does the generator set equal the Hilbert basis of its cone?
bool saturation_check(const SemigroupData& s);

// The saturated semigroup attached to a face for the global series: image of
// the dual cone in the quotient lattice, padded with free coordinates.
SemigroupData quotient_face_semigroup(const SemigroupData& s, const Cone& theta);

}  // namespace toricmot
