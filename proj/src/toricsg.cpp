#include "toricmot/toricsg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toricmot {

namespace {

std::string vec_str(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

SemigroupData make_semigroup_unchecked(int d, std::vector<IVec> gens, bool saturated) {
  SemigroupData s;
  s.d = d;
  s.gens = std::move(gens);
  s.is_saturated = saturated;
  if (d > 0 && !s.gens.empty()) {
    s.cone_dual = cone_from_rays(d, s.gens);
    s.cone = dual_cone(s.cone_dual);
  }
  return s;
}

bool semigroup_contains(const SemigroupData& s, const IVec& target, std::vector<Int>* combo) {
  struct Search {
    const SemigroupData& s;
    std::map<IVec, int> memo;  // -1 no, otherwise index of first usable generator

    int find(const IVec& t) {
      if (is_zero(t)) return int(s.gens.size());  // sentinel: empty combination
      auto it = memo.find(t);
      if (it != memo.end()) return it->second;
      memo[t] = -1;
      if (!s.cone_dual.contains(t)) return -1;
      for (size_t i = 0; i < s.gens.size(); ++i) {
        IVec rest = vsub(t, s.gens[i]);
        if (find(rest) >= 0) {
          memo[t] = int(i);
          return int(i);
        }
      }
      return -1;
    }
  } search{s, {}};
  if (s.is_trivial()) return is_zero(target);
  int r = search.find(target);
  if (r < 0) return false;
  if (combo) {
    combo->assign(s.gens.size(), Int(0));
    IVec t = target;
    while (!is_zero(t)) {
      int i = search.find(t);
      (*combo)[i] += 1;
      t = vsub(t, s.gens[i]);
    }
  }
  return true;
}

SemigroupData build_semigroup(int d, const std::vector<IVec>& gens, bool saturated) {
  if (d <= 0) throw validation_error("lattice rank must be positive");
  if (gens.empty()) throw validation_error("empty generator list");
  for (const auto& g : gens) {
    if (int(g.size()) != d) throw validation_error("generator of wrong dimension");
    if (is_zero(g)) throw validation_error("zero generator");
  }
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] == gens[j])
        throw validation_error("repeated generator " + vec_str(gens[i]));

  SemigroupData s = make_semigroup_unchecked(d, gens, saturated);
  if (!s.cone_dual.is_pointed())
    throw validation_error("generator cone is not strictly convex");
  if (s.cone_dual.dim != d)
    throw validation_error("generator cone is not full dimensional");
  IntMatrix m = IntMatrix::from_rows(gens, d);
  if (lattice_rank(m) != d || lattice_index(m) != 1)
    throw validation_error("generators do not generate the lattice");

  for (size_t i = 0; i < gens.size(); ++i) {
    for (size_t k = 0; k < gens.size(); ++k) {
      if (k == i) continue;
      IVec rest = vsub(gens[i], gens[k]);
      if (is_zero(rest) || !s.cone_dual.contains(rest)) continue;
      std::vector<Int> combo;
      if (semigroup_contains(s, rest, &combo)) {
        std::ostringstream os;
        os << "generator " << vec_str(gens[i]) << " is decomposable: "
           << vec_str(gens[k]) << " + " << vec_str(rest);
        throw validation_error(os.str());
      }
    }
  }
  return s;
}

std::vector<IVec> combination_ideal(const SemigroupData& s, int j) {
  int n = s.n();
  if (j < 1 || j > n) throw std::invalid_argument("combination_ideal: j out of range");
  std::set<IVec, decltype(&lex_less)> out(&lex_less);
  std::vector<int> idx(j);
  // iterate over j-subsets
  for (int i = 0; i < j; ++i) idx[i] = i;
  while (true) {
    IVec sum(s.d, Int(0));
    for (int i : idx) sum = vadd(sum, s.gens[i]);
    out.insert(sum);
    int p = j - 1;
    while (p >= 0 && idx[p] == n - j + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int t = p + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
  }
  return {out.begin(), out.end()};
}

std::vector<IVec> log_jacobian_ideal(const SemigroupData& s, int l) {
  int n = s.n();
  if (l < 1 || l > s.d) throw std::invalid_argument("log_jacobian_ideal: l out of range");
  std::set<IVec, decltype(&lex_less)> out(&lex_less);
  std::vector<int> idx(l);
  for (int i = 0; i < l; ++i) idx[i] = i;
  if (l > n) return {};
  while (true) {
    std::vector<IVec> rows;
    for (int i : idx) rows.push_back(s.gens[i]);
    if (lattice_rank(IntMatrix::from_rows(rows, s.d)) == l) {
      IVec sum(s.d, Int(0));
      for (int i : idx) sum = vadd(sum, s.gens[i]);
      out.insert(sum);
    }
    int p = l - 1;
    while (p >= 0 && idx[p] == n - l + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int t = p + 1; t < l; ++t) idx[t] = idx[t - 1] + 1;
  }
  return {out.begin(), out.end()};
}

Int IdealFamily::ord_c(int j, const IVec& nu) const {
  if (j == 0) return 0;
  return cpoly[j - 1].support(nu);
}

Int IdealFamily::ord_jac(int l, const IVec& nu) const {
  if (l == 0) return 0;
  return jpoly[l - 1].support(nu);
}

ExtInt IdealFamily::phi(int j, const IVec& nu) const {
  if (j == 0) return ExtInt::of(0);
  if (j > n()) return ExtInt::inf();
  return ExtInt::of(ord_c(j, nu) - ord_c(j - 1, nu));
}

ExtInt IdealFamily::phi_jac(int l, const IVec& nu) const {
  if (l == 0) return ExtInt::of(0);
  if (l > dim()) return ExtInt::inf();
  return ExtInt::of(ord_jac(l, nu) - ord_jac(l - 1, nu));
}

IdealFamily phi_sequences(const SemigroupData& s) {
  if (s.is_trivial()) throw std::invalid_argument("phi_sequences: trivial semigroup");
  IdealFamily f;
  f.sg = s;
  int n = s.n();
  for (int j = 1; j <= n; ++j) {
    f.csum.push_back(combination_ideal(s, j));
    f.cpoly.push_back(newton_polyhedron(f.csum.back(), s.cone_dual));
    f.theta.push_back(normal_fan(f.cpoly.back(), s.cone));
    f.theta_cap.push_back(j == 1 ? f.theta.back()
                                 : fan_intersection(f.theta_cap.back(), f.theta.back()));
  }
  for (int l = 1; l <= s.d; ++l) {
    f.jac.push_back(log_jacobian_ideal(s, l));
    f.jpoly.push_back(newton_polyhedron(f.jac.back(), s.cone_dual));
    f.sigma_l.push_back(normal_fan(f.jpoly.back(), s.cone));
    f.sigma_cap.push_back(l == 1 ? f.sigma_l.back()
                                 : fan_intersection(f.sigma_cap.back(), f.sigma_l.back()));
  }

  // Monotonicity of both sequences, checked on the finest subdivision.
  std::vector<IVec> samples;
  for (const auto& c : f.theta_cap.back().cones)
    if (c.dim > 0) samples.push_back(c.interior_point());
  IVec total(s.d, Int(0));
  for (const auto& g : s.gens) total = vadd(total, g);
  for (const auto& nu : samples) {
    Int prev = 0;
    for (int j = 1; j <= n; ++j) {
      Int cur = f.phi(j, nu).value;
      if (cur < prev) throw certification_error("phi sequence not monotone");
      prev = cur;
    }
    prev = 0;
    for (int l = 1; l <= s.d; ++l) {
      Int cur = f.phi_jac(l, nu).value;
      if (cur < prev) throw certification_error("jacobian phi sequence not monotone");
      prev = cur;
    }
    if (f.ord_c(n, nu) != dot(nu, total))
      throw certification_error("top sum ideal support mismatch");
  }
  return f;
}

std::vector<Cone> semigroup_faces(const SemigroupData& s) { return faces_of(s.cone); }

SemigroupData face_semigroup(const SemigroupData& s, const Cone& eta,
                             std::vector<IVec>* basis_out) {
  if (s.is_trivial()) throw std::invalid_argument("face_semigroup: trivial semigroup");
  if (eta.dim == 0) {
    if (basis_out) {
      basis_out->clear();
      for (int i = 0; i < s.d; ++i) {
        IVec e(s.d, Int(0));
        e[i] = 1;
        basis_out->push_back(e);
      }
    }
    return s;
  }
  IVec probe = eta.interior_point();
  std::vector<IVec> kept;
  for (const auto& g : s.gens)
    if (dot(g, probe) == 0) kept.push_back(g);
  if (kept.empty()) {
    if (basis_out) basis_out->clear();
    return SemigroupData{};  // trivial marker
  }
  std::vector<IVec> basis = row_lattice_basis(kept, s.d);
  int r = int(basis.size());
  IntMatrix bt(s.d, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s.d; ++j) bt.at(j, i) = basis[i][j];
  std::vector<IVec> new_gens;
  for (const auto& g : kept) {
    auto sol = solve_integer(bt, g);
    if (!sol) throw certification_error("face_semigroup: generator outside its own lattice");
    new_gens.push_back(sol->particular);
  }
  if (basis_out) *basis_out = basis;
  return build_semigroup(r, new_gens, s.is_saturated);
}

std::vector<IVec> hilbert_basis(const Cone& c) {
  if (!c.is_pointed() || c.dim != c.d)
    throw std::invalid_argument("hilbert_basis: cone must be pointed and full dimensional");
  int d = c.d;
  if (d == 0) return {};
  // Irreducible elements live in the zonotope spanned by the primitive rays.
  IVec lo(d, Int(0)), hi(d, Int(0));
  for (const auto& r : c.rays)
    for (int t = 0; t < d; ++t) {
      if (r[t] < 0) lo[t] += r[t];
      if (r[t] > 0) hi[t] += r[t];
    }
  std::vector<IVec> candidates;
  IVec cur = lo;
  while (true) {
    if (!is_zero(cur) && c.contains(cur)) candidates.push_back(cur);
    int t = 0;
    while (t < d) {
      ++cur[t];
      if (cur[t] <= hi[t]) break;
      cur[t] = lo[t];
      ++t;
    }
    if (t == d) break;
  }
  IVec w(d, Int(0));
  for (const auto& f : c.facets) w = vadd(w, f);
  std::sort(candidates.begin(), candidates.end(), [&](const IVec& a, const IVec& b) {
    Int wa = dot(w, a), wb = dot(w, b);
    if (wa != wb) return wa < wb;
    return lex_less(a, b);
  });
  std::vector<IVec> basis;
  for (const auto& p : candidates) {
    bool reducible = false;
    for (const auto& q : basis) {
      IVec rest = vsub(p, q);
      if (!is_zero(rest) && c.contains(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(p);
  }
  std::sort(basis.begin(), basis.end(), lex_less);
  return basis;
}

bool saturation_check(const SemigroupData& s) {
  auto hb = hilbert_basis(s.cone_dual);
  auto gens = s.gens;
  std::sort(gens.begin(), gens.end(), lex_less);
  return hb == gens;
}

SemigroupData quotient_face_semigroup(const SemigroupData& s, const Cone& theta) {
  int k = theta.dim;
  int codim = s.d - k;
  std::vector<IVec> gens;
  if (k == 0) {
    for (int i = 0; i < s.d; ++i) {
      IVec e(s.d, Int(0));
      e[i] = 1;
      gens.push_back(e);
    }
    return build_semigroup(s.d, gens, true);
  }
  // Basis of the saturated lattice spanned by theta.
  std::vector<IVec> w = kernel_basis(IntMatrix::from_rows(theta.span_eqs, s.d));
  if (int(w.size()) != k) throw certification_error("quotient_face_semigroup: rank mismatch");
  std::vector<IVec> img;
  for (const auto& u : s.cone_dual.rays) {
    IVec coords(k);
    for (int i = 0; i < k; ++i) coords[i] = dot(u, w[i]);
    img.push_back(coords);
  }
  Cone imgcone = cone_from_rays(k, img);
  if (!imgcone.is_pointed() || imgcone.dim != k)
    throw certification_error("quotient_face_semigroup: image cone degenerate");
  for (const auto& h : hilbert_basis(imgcone)) {
    IVec g(s.d, Int(0));
    for (int i = 0; i < k; ++i) g[i] = h[i];
    gens.push_back(g);
  }
  for (int i = 0; i < codim; ++i) {
    IVec e(s.d, Int(0));
    e[k + i] = 1;
    gens.push_back(e);
  }
  return build_semigroup(s.d, gens, true);
}

}  // namespace toricmot
