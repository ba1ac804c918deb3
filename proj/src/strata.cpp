#include "toricmot/strata.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricmot {

namespace {

// Functional dominance on a cone: <.,a> <= <.,b> everywhere on theta.
bool dominated_on(const Cone& theta, const IVec& a, const IVec& b) {
  for (const auto& r : theta.rays)
    if (dot(r, a) > dot(r, b)) return false;
  return true;
}

// Greedy minimal independent subset of `small`, ordered by the pairing
// functionals restricted to theta (ties by index).
std::vector<int> greedy_basis_on(const SemigroupData& sg, const Cone& theta,
                                 const std::vector<int>& small) {
  std::vector<int> order = small;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    bool ab = dominated_on(theta, sg.gens[a], sg.gens[b]);
    bool ba = dominated_on(theta, sg.gens[b], sg.gens[a]);
    if (ab && !ba) return true;
    if (ba && !ab) return false;
    return a < b;
  });
  std::vector<int> basis;
  std::vector<IVec> rows;
  for (int i : order) {
    rows.push_back(sg.gens[i]);
    if (lattice_rank(IntMatrix::from_rows(rows, sg.d)) == int(rows.size()))
      basis.push_back(i);
    else
      rows.pop_back();
  }
  return basis;
}

std::vector<int> greedy_basis_at(const SemigroupData& sg, const IVec& nu,
                                 const std::vector<int>& small) {
  std::vector<int> order = small;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    Int va = dot(nu, sg.gens[a]), vb = dot(nu, sg.gens[b]);
    if (va != vb) return va < vb;
    return a < b;
  });
  std::vector<int> basis;
  std::vector<IVec> rows;
  for (int i : order) {
    rows.push_back(sg.gens[i]);
    if (lattice_rank(IntMatrix::from_rows(rows, sg.d)) == int(rows.size()))
      basis.push_back(i);
    else
      rows.pop_back();
  }
  return basis;
}

}  // namespace

ClassWitness classify_pair(const IdealFamily& f, const IVec& nu, const Int& s) {
  ClassWitness w;
  w.nu = nu;
  w.s = s;
  for (int i = 0; i < f.n(); ++i)
    if (dot(nu, f.sg.gens[i]) <= s) w.small.push_back(i);
  if (w.small.empty()) {
    w.l = 0;
    w.q = 1;
    return w;
  }
  std::vector<IVec> rows;
  for (int i : w.small) rows.push_back(f.sg.gens[i]);
  IntMatrix m = IntMatrix::from_rows(rows, f.dim());
  w.l = lattice_rank(m);
  w.q = lattice_index(m);
  w.mu_basis = greedy_basis_at(f.sg, nu, w.small);
  w.ord_jac = f.ord_jac(w.l, nu);
  Int check = 0;
  for (int i : w.mu_basis) check += dot(nu, f.sg.gens[i]);
  if (check != w.ord_jac)
    throw certification_error("classify_pair: greedy basis misses the jacobian minimum");
  return w;
}

std::vector<Cone> refinement_pieces(const IdealFamily& f, int j, const Cone& theta) {
  std::vector<Cone> maximal;
  if (j >= f.n()) {
    maximal.push_back(theta);
  } else {
    const Fan& next = f.theta[j];  // subdivision for the (j+1)-th ideal
    for (const auto& c : next.cones) {
      if (c.dim != next.support.dim) continue;
      maximal.push_back(intersect(theta, c));
    }
  }
  Fan local = make_fan(theta.d, theta, maximal);
  std::vector<Cone> pieces;
  for (const auto& p : local.cones) {
    if (p.dim == 0) continue;
    if (theta.in_relative_interior(p.interior_point())) pieces.push_back(p);
  }
  std::sort(pieces.begin(), pieces.end(), [](const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.rays < b.rays;
  });
  return pieces;
}

std::optional<std::pair<IVec, Int>> witness_search(const IdealFamily& f, int j,
                                                   const Cone& theta) {
  for (const auto& p : refinement_pieces(f, j, theta)) {
    IVec nu = p.interior_point();
    bool interior = true;
    for (const auto& g : f.sg.gens)
      if (dot(nu, g) <= 0) interior = false;
    if (!interior) continue;
    Int lo = f.phi(j, nu).value;
    ExtInt hi = f.phi(j + 1, nu);
    if (lt(lo, hi)) {
      int count = 0;
      for (const auto& g : f.sg.gens)
        if (dot(nu, g) <= lo) ++count;
      if (count != j)
        throw certification_error("witness_search: pairing count disagrees with level");
      return std::make_pair(nu, lo);
    }
  }
  return std::nullopt;
}

Cone associated_tau(const IdealFamily& f, const Stratum& st) {
  const Fan& fan = f.sigma_cap[st.l - 1];
  const Cone& tau = fan.locate(st.witness_nu);
  for (const auto& r : st.theta.rays)
    if (!tau.contains(r))
      throw certification_error("associated_tau: theta not contained in tau");
  return tau;
}

bool d_l_membership(const IdealFamily& f, const Stratum& st) {
  auto face = f.jpoly[st.l - 1].min_face_vertices(st.witness_nu);
  for (const auto& v : face)
    for (const auto& r : f.sg.cone.rays)
      if (dot(r, v) <= 0) return false;
  return true;
}

namespace {

Int mu_sum(const IdealFamily& f, const std::vector<int>& mu_basis, const IVec& nu) {
  Int s = 0;
  for (int i : mu_basis) s += dot(nu, f.sg.gens[i]);
  return s;
}

void push_pair(std::set<PolePair>& out, const IdealFamily& f, const Stratum& st,
               const IVec& nu, const Int& b) {
  Int a = Int(st.l) * b - mu_sum(f, st.mu_basis, nu);
  if (a == 0 && b == 0) return;  // degenerate edge projected away
  if (b <= 0 || a < 0)
    throw certification_error("pole_set: pair outside the admissible quadrant");
  out.insert({a, b});
}

}  // namespace

std::vector<PolePair> pole_set(const IdealFamily& f, const Stratum& st) {
  if (st.empty) throw std::invalid_argument("pole_set: empty stratum");
  std::set<PolePair> out;
  for (const auto& r : st.theta.rays) push_pair(out, f, st, r, f.phi(st.j, r).value);
  if (st.j < f.n()) {
    std::set<IVec, decltype(&lex_less)> upper_rays(&lex_less);
    for (const auto& p : refinement_pieces(f, st.j, st.theta))
      for (const auto& r : p.rays) upper_rays.insert(r);
    for (const auto& r : upper_rays) {
      Int lo = f.phi(st.j, r).value;
      Int hi = f.phi(st.j + 1, r).value;
      if (hi != lo) push_pair(out, f, st, r, hi);
    }
  } else {
    out.insert({Int(f.dim()), Int(1)});
  }
  return {out.begin(), out.end()};
}

namespace {

// Edge multiset of the closure of the stratum in N x Z, mapped through the
// monomial substitution. This is what the rational reconstruction divides by.
std::vector<PolePair> closure_edge_pairs(const IdealFamily& f, const Stratum& st) {
  std::vector<IVec> gens;
  int d = f.dim();
  for (const auto& p : refinement_pieces(f, st.j, st.theta)) {
    IVec probe = p.interior_point();
    Int lo = f.phi(st.j, probe).value;
    ExtInt hi = f.phi(st.j + 1, probe);
    if (!lt(lo, hi)) continue;  // the stratum has no points over this piece
    for (const auto& r : p.rays) {
      IVec lower(d + 1);
      for (int t = 0; t < d; ++t) lower[t] = r[t];
      lower[d] = f.phi(st.j, r).value;
      gens.push_back(lower);
      if (st.j < f.n()) {
        IVec upper = lower;
        upper[d] = f.phi(st.j + 1, r).value;
        gens.push_back(upper);
      }
    }
  }
  if (st.j == f.n()) {
    IVec vertical(d + 1, Int(0));
    vertical[d] = 1;
    gens.push_back(vertical);
  }
  Cone closure = cone_from_rays(d + 1, gens);
  std::vector<PolePair> pairs;
  for (const auto& e : closure.rays) {
    IVec nu(e.begin(), e.begin() + d);
    Int b = e[d];
    Int a = Int(st.l) * b - mu_sum(f, st.mu_basis, nu);
    if (a == 0 && b == 0) continue;
    if (b <= 0 || a < 0)
      throw certification_error("closure_edge_pairs: pair outside the admissible quadrant");
    pairs.push_back({a, b});
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;  // multiset: one factor per edge
}

}  // namespace

std::vector<Stratum> enumerate_strata(const IdealFamily& f) {
  std::vector<Stratum> out;
  for (int j = 1; j <= f.n(); ++j) {
    const Fan& fan = f.theta_cap[j - 1];
    for (const auto& theta : fan.cones) {
      if (theta.dim == 0) continue;
      IVec probe = theta.interior_point();
      bool interior = true;
      for (const auto& g : f.sg.gens)
        if (dot(probe, g) <= 0) interior = false;
      if (!interior) continue;

      Stratum st;
      st.j = j;
      st.theta = theta;
      auto w = witness_search(f, j, theta);
      if (!w) {
        out.push_back(std::move(st));
        continue;
      }
      st.empty = false;
      st.witness_nu = w->first;
      st.witness_s = w->second;
      ClassWitness cw = classify_pair(f, st.witness_nu, st.witness_s);
      st.small = cw.small;
      st.l = cw.l;
      st.q = cw.q;
      st.mu_basis = greedy_basis_on(f.sg, theta, st.small);
      {
        Int check = 0;
        for (int i : st.mu_basis) check += dot(st.witness_nu, f.sg.gens[i]);
        if (check != cw.ord_jac)
          throw certification_error("enumerate_strata: basis sum mismatch");
      }
      st.tau = associated_tau(f, st);
      st.contributes = d_l_membership(f, st);
      st.poles = pole_set(f, st);
      st.recon_poles = closure_edge_pairs(f, st);
      out.push_back(std::move(st));
    }
  }
  std::sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
    if (a.j != b.j) return a.j < b.j;
    if (a.theta.dim != b.theta.dim) return a.theta.dim < b.theta.dim;
    return a.theta.rays < b.theta.rays;
  });
  return out;
}

}  // namespace toricmot
