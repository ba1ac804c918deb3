#pragma once
#include "toricmot/toricsg.hpp"

namespace toricmot {

using PolePair = std::pair<Int, Int>;  // (a, b) meaning a factor 1 - L^a T^b

// The locus of pairs (nu, s) with nu interior to theta and s between the
// j-th and (j+1)-th piecewise linear values, together with its constants.
struct Stratum {
  int j = 0;
  Cone theta;
  bool empty = true;
  IVec witness_nu;
  Int witness_s = 0;
  std::vector<int> small;    // indices i with <nu, e_i> <= s
  std::vector<int> mu_basis; // greedy independent subset realizing the minimum
  int l = 0;
  Int q = 1;
  Cone tau;                  // cone of the jacobian subdivision containing theta
  bool contributes = false;  // minimizing face lies interior to the dual cone
  std::vector<PolePair> poles;       // candidate pole pairs, deduplicated
  std::vector<PolePair> recon_poles; // edge multiset of the closure cone
};

// Derived data of a single witness pair.
struct ClassWitness {
  IVec nu;
  Int s;
  std::vector<int> small;
  std::vector<int> mu_basis;
  int l = 0;
  Int q = 1;
  Int ord_jac = 0;  // support value of the l-th jacobian ideal at nu
};

ClassWitness classify_pair(const IdealFamily& f, const IVec& nu, const Int& s);

// Lattice point interior to theta with exactly j pairings at most s = phi_j,
// or nothing when the stratum is empty.
std::optional<std::pair<IVec, Int>> witness_search(const IdealFamily& f, int j,
                                                   const Cone& theta);

// The unique cone of the l-fold jacobian intersection whose relative interior
// contains that of theta.
Cone associated_tau(const IdealFamily& f, const Stratum& st);

bool d_l_membership(const IdealFamily& f, const Stratum& st);

std::vector<PolePair> pole_set(const IdealFamily& f, const Stratum& st);

// All strata (j, theta) in canonical order, with invariants filled in for the
// nonempty ones.
std::vector<Stratum> enumerate_strata(const IdealFamily& f);

// Pieces of theta cut by the next subdivision whose relative interior stays
// interior to theta; used by the witness search and the series engine.
std::vector<Cone> refinement_pieces(const IdealFamily& f, int j, const Cone& theta);

}  // namespace toricmot
