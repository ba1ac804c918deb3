#pragma once
#include <map>
#include <set>

#include "toricmot/series.hpp"
#include "toricmot/strata.hpp"

namespace toricmot {

// Jet-class monomials of a stratum up to order s_max: one monomial L^a T^s
// per class, collected as (s, a) -> number of classes.
std::map<std::pair<long, long>, long> class_monomials(const IdealFamily& f,
                                                      const Stratum& st, int s_max);

// (L-1)^l N(L,T) / prod(1 - L^a T^b): numerator reconstructed against the
// edge denominator and certified on the guard region.
MotivicRational stratum_series(const IdealFamily& f, const Stratum& st, int guard = 10);

// One face of sigma with its re-based semigroup and per-stratum series.
struct FaceComputation {
  Cone eta;
  SemigroupData face_sg;
  std::vector<IVec> face_basis;
  bool trivial = false;
  std::vector<Stratum> strata;             // canonical order; empty for trivial face
  std::vector<MotivicRational> series;     // per stratum; zero unless contributing
  Int q_lcm = 1;                           // lcm of q over contributing strata
  std::vector<PolePair> pole_candidates;   // union over contributing strata
};

FaceComputation compute_face(const SemigroupData& face_sg, Cone eta, int guard = 10);
std::vector<FaceComputation> compute_local(const SemigroupData& s, int guard = 10);

// Weighted sums over the per-face stratum series.
MotivicRational assemble_local(const std::vector<FaceComputation>& faces, bool arithmetic);
MotivicRational assemble_difference(const std::vector<FaceComputation>& faces);

// Auxiliary series of one semigroup (the distinguished-face summand).
MotivicRational aux_series(const SemigroupData& s, bool arithmetic = true, int guard = 10);

// Local series at the distinguished point: sum over all faces.
MotivicRational local_series(const SemigroupData& s, bool arithmetic = true, int guard = 10);

// arithmetic - geometric, verified against the stratum-wise weighted sum.
MotivicRational difference_series(const SemigroupData& s, int guard = 10);

Int q_lcm_over_faces(const std::vector<FaceComputation>& faces);
std::vector<PolePair> pole_union_over_faces(const std::vector<FaceComputation>& faces);

// Saturated case: single stratum sum over every nonempty stratum, no face
// recursion, plus the constant-jet series.
MotivicRational normal_local_series(const SemigroupData& s, int guard = 10);

// Saturated case, arcs with arbitrary origin: local series of the quotient
// semigroups weighted by (L-1)^codim.
MotivicRational global_series_normal(const SemigroupData& s, int guard = 10);

struct NicaiseCertificate {
  int level = 0;
  IVec vertex;
  bool ok = false;
  std::vector<int> subset;  // generator indices summing to the vertex
};
struct NicaiseResult {
  bool verdict = false;
  std::vector<NicaiseCertificate> certificates;
};

// Every vertex of every jacobian Newton polyhedron is a sum of independent
// generators extending to a lattice basis.
NicaiseResult check_nicaise(const SemigroupData& s);

// Closed form for numerical semigroups e_1 < ... < e_n with gcd 1.
MotivicRational curve_closed_form(const std::vector<Int>& gens);

// Brute-force expansion: jet classes enumerated per face and order without
// the rational reconstruction machinery.
SeriesExpansion oracle_series(const SemigroupData& s, int s_max, bool arithmetic = true);

}  // namespace toricmot
