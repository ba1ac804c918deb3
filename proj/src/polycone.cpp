#include "toricmot/polycone.hpp"

#include <algorithm>
#include <set>

namespace toricmot {

namespace {

std::vector<IVec> sorted_unique(std::vector<IVec> vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

struct DDRay {
  IVec v;
  std::vector<char> tight;  // per processed inequality
};

}  // namespace

GeneratorSet dd_generators(int d, const std::vector<IVec>& ineqs_in,
                           const std::vector<IVec>& eqs_in) {
  std::vector<IVec> lines;
  for (int i = 0; i < d; ++i) {
    IVec e(d, Int(0));
    e[i] = 1;
    lines.push_back(e);
  }
  std::vector<DDRay> rays;
  std::vector<IVec> processed;

  // An equation is the pair of opposite inequalities.
  std::vector<IVec> constraints;
  for (const auto& e : eqs_in) {
    if (is_zero(e)) continue;
    constraints.push_back(e);
    constraints.push_back(vneg(e));
  }
  for (const auto& a : ineqs_in)
    if (!is_zero(a)) constraints.push_back(a);

  for (const auto& a : constraints) {
    int hit = -1;
    for (size_t i = 0; i < lines.size(); ++i)
      if (dot(a, lines[i]) != 0) {
        hit = int(i);
        break;
      }
    if (hit >= 0) {
      IVec v0 = lines[hit];
      Int s0 = dot(a, v0);
      if (s0 < 0) {
        v0 = vneg(v0);
        s0 = -s0;
      }
      std::vector<IVec> newlines;
      for (size_t i = 0; i < lines.size(); ++i) {
        if (int(i) == hit) continue;
        Int si = dot(a, lines[i]);
        newlines.push_back(primitive(vsub(vscale(s0, lines[i]), vscale(si, v0))));
      }
      lines = std::move(newlines);
      for (auto& r : rays) {
        Int sr = dot(a, r.v);
        r.v = primitive(vsub(vscale(s0, r.v), vscale(sr, v0)));
        r.tight.push_back(1);
      }
      DDRay nr;
      nr.v = primitive(v0);
      nr.tight.assign(processed.size(), 1);  // lines were orthogonal to all previous
      nr.tight.push_back(0);
      rays.push_back(std::move(nr));
      processed.push_back(a);
      continue;
    }
    // Lineality is orthogonal to a; split the pointed part.
    std::vector<Int> sv(rays.size());
    bool any_neg = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      sv[i] = dot(a, rays[i].v);
      if (sv[i] < 0) any_neg = true;
    }
    if (!any_neg) {
      for (size_t i = 0; i < rays.size(); ++i) rays[i].tight.push_back(sv[i] == 0 ? 1 : 0);
      processed.push_back(a);
      continue;
    }
    std::vector<DDRay> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (sv[i] >= 0) {
        DDRay r = rays[i];
        r.tight.push_back(sv[i] == 0 ? 1 : 0);
        next.push_back(std::move(r));
      }
    }
    auto adjacent = [&](size_t p, size_t n) {
      size_t m = processed.size();
      for (size_t r = 0; r < rays.size(); ++r) {
        if (r == p || r == n) continue;
        bool superset = true;
        for (size_t k = 0; k < m; ++k)
          if (rays[p].tight[k] && rays[n].tight[k] && !rays[r].tight[k]) {
            superset = false;
            break;
          }
        if (superset) return false;
      }
      return true;
    };
    for (size_t p = 0; p < rays.size(); ++p) {
      if (sv[p] <= 0) continue;
      for (size_t n = 0; n < rays.size(); ++n) {
        if (sv[n] >= 0) continue;
        if (rays.size() > 2 && !adjacent(p, n)) continue;
        DDRay w;
        w.v = primitive(vadd(vscale(-sv[n], rays[p].v), vscale(sv[p], rays[n].v)));
        if (is_zero(w.v)) continue;
        w.tight.resize(processed.size() + 1);
        for (size_t k = 0; k < processed.size(); ++k)
          w.tight[k] = rays[p].tight[k] && rays[n].tight[k];
        w.tight[processed.size()] = 1;
        next.push_back(std::move(w));
      }
    }
    // Dedupe rays created twice via different pairs.
    std::sort(next.begin(), next.end(),
              [](const DDRay& x, const DDRay& y) { return lex_less(x.v, y.v); });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const DDRay& x, const DDRay& y) { return x.v == y.v; }),
               next.end());
    rays = std::move(next);
    processed.push_back(a);
  }

  GeneratorSet g;
  for (auto& r : rays) g.rays.push_back(std::move(r.v));
  g.rays = sorted_unique(std::move(g.rays));
  g.lines = std::move(lines);
  return g;
}

namespace {

int span_rank(int d, const std::vector<IVec>& rays, const std::vector<IVec>& lines) {
  std::vector<IVec> all = rays;
  all.insert(all.end(), lines.begin(), lines.end());
  if (all.empty()) return 0;
  return lattice_rank(IntMatrix::from_rows(all, d));
}

// Assemble the canonical cone from generators plus a complete list of valid
// inequality candidates.
Cone finalize_cone(int d, std::vector<IVec> rays, std::vector<IVec> lines,
                   const std::vector<IVec>& ineq_candidates) {
  Cone c;
  c.d = d;
  c.rays = sorted_unique(std::move(rays));
  std::vector<IVec> lraw;
  for (auto& l : lines)
    if (!is_zero(l)) lraw.push_back(primitive(l));
  c.lines = row_lattice_basis(lraw, d);
  c.dim = span_rank(d, c.rays, c.lines);

  std::vector<IVec> spanners = c.rays;
  spanners.insert(spanners.end(), c.lines.begin(), c.lines.end());
  c.span_eqs =
      row_lattice_basis(kernel_basis(IntMatrix::from_rows(spanners, d)), d);

  std::set<IVec, decltype(&lex_less)> seen(&lex_less);
  for (const auto& fraw : ineq_candidates) {
    IVec f = primitive(fraw);
    if (is_zero(f)) continue;
    bool valid = true, all_tight = true;
    std::vector<IVec> tight = c.lines;
    for (const auto& l : c.lines)
      if (dot(f, l) != 0) valid = false;
    for (const auto& r : c.rays) {
      Int s = dot(f, r);
      if (s < 0) valid = false;
      if (s == 0)
        tight.push_back(r);
      else
        all_tight = false;
    }
    if (!valid || all_tight) continue;  // all_tight means an implicit equation
    if (span_rank(d, tight, {}) != c.dim - 1) continue;
    if (seen.insert(f).second) c.facets.push_back(f);
  }
  std::sort(c.facets.begin(), c.facets.end(), lex_less);
  return c;
}

}  // namespace

Cone cone_from_inequalities(int d, const std::vector<IVec>& ineqs,
                            const std::vector<IVec>& eqs) {
  GeneratorSet g = dd_generators(d, ineqs, eqs);
  std::vector<IVec> candidates = ineqs;
  return finalize_cone(d, g.rays, g.lines, candidates);
}

Cone cone_from_rays(int d, const std::vector<IVec>& gens, const std::vector<IVec>& gen_lines) {
  std::vector<IVec> gs;
  for (const auto& g : gens)
    if (!is_zero(g)) gs.push_back(primitive(g));
  gs = sorted_unique(std::move(gs));
  GeneratorSet dual = dd_generators(d, gs, gen_lines);
  GeneratorSet primal = dd_generators(d, dual.rays, dual.lines);
  return finalize_cone(d, primal.rays, primal.lines, dual.rays);
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.d != b.d) throw std::invalid_argument("intersect: ambient mismatch");
  std::vector<IVec> ineqs = a.facets;
  ineqs.insert(ineqs.end(), b.facets.begin(), b.facets.end());
  std::vector<IVec> eqs = a.span_eqs;
  eqs.insert(eqs.end(), b.span_eqs.begin(), b.span_eqs.end());
  GeneratorSet g = dd_generators(a.d, ineqs, eqs);
  return finalize_cone(a.d, g.rays, g.lines, ineqs);
}

Cone dual_cone(const Cone& c) {
  return cone_from_inequalities(c.d, c.rays, c.lines);
}

bool Cone::contains(const IVec& x) const {
  for (const auto& e : span_eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::in_relative_interior(const IVec& x) const {
  for (const auto& e : span_eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets)
    if (dot(f, x) <= 0) return false;
  if (dim == 0) return is_zero(x);
  return true;
}

IVec Cone::interior_point() const {
  IVec p(d, Int(0));
  for (const auto& r : rays) p = vadd(p, r);
  return p;
}

bool relative_interior_membership(const Cone& c, const IVec& v) {
  return c.in_relative_interior(v);
}

std::vector<Cone> faces_of(const Cone& c) {
  if (!c.is_pointed()) throw unsupported_error("faces_of: cone has lineality");
  std::map<std::vector<IVec>, Cone> found;
  std::vector<Cone> queue{c};
  found[c.rays] = c;
  while (!queue.empty()) {
    Cone cur = queue.back();
    queue.pop_back();
    for (const auto& f : cur.facets) {
      std::vector<IVec> sub;
      for (const auto& r : cur.rays)
        if (dot(f, r) == 0) sub.push_back(r);
      Cone face = cone_from_rays(c.d, sub);
      if (!found.count(face.rays)) {
        found[face.rays] = face;
        queue.push_back(face);
      }
    }
  }
  Cone zero = cone_from_rays(c.d, {});
  if (!found.count(zero.rays)) found[zero.rays] = zero;
  std::vector<Cone> out;
  for (auto& kv : found) out.push_back(kv.second);
  std::sort(out.begin(), out.end(), [](const Cone& x, const Cone& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.rays < y.rays;
  });
  return out;
}

std::vector<IVec> face_orthogonal_equations(const Cone& sigma, const Cone& eta) {
  bool is_face = false;
  for (const auto& f : faces_of(sigma))
    if (f.same_rays(eta)) is_face = true;
  if (!is_face) throw std::invalid_argument("face_orthogonal_equations: not a face");
  return eta.rays;
}

const Cone& Fan::locate(const IVec& x) const {
  for (const auto& c : cones)
    if (c.in_relative_interior(x)) return c;
  throw std::invalid_argument("Fan::locate: point outside support");
}

Fan make_fan(int d, Cone support, const std::vector<Cone>& maximal) {
  std::map<std::vector<IVec>, Cone> found;
  for (const auto& m : maximal)
    for (auto& f : faces_of(m))
      if (!found.count(f.rays)) found[f.rays] = f;
  Fan fan;
  fan.d = d;
  fan.support = std::move(support);
  for (auto& kv : found) fan.cones.push_back(kv.second);
  std::sort(fan.cones.begin(), fan.cones.end(), [](const Cone& x, const Cone& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.rays < y.rays;
  });
  return fan;
}

Fan fan_intersection(const Fan& a, const Fan& b) {
  if (!a.support.same_rays(b.support))
    throw std::invalid_argument("fan_intersection: support mismatch");
  std::vector<Cone> pieces;
  for (const auto& ca : a.cones) {
    if (ca.dim != a.support.dim) continue;
    for (const auto& cb : b.cones) {
      if (cb.dim != b.support.dim) continue;
      pieces.push_back(intersect(ca, cb));
    }
  }
  return make_fan(a.d, a.support, pieces);
}

Fan fan_intersection(const std::vector<const Fan*>& fans) {
  if (fans.empty()) throw std::invalid_argument("fan_intersection: empty list");
  Fan acc = *fans[0];
  for (size_t i = 1; i < fans.size(); ++i) acc = fan_intersection(acc, *fans[i]);
  return acc;
}

Int NewtonPolyhedron::support(const IVec& nu) const {
  Int best;
  bool first = true;
  for (const auto& v : vertices) {
    Int val = dot(nu, v);
    if (first || val < best) {
      best = val;
      first = false;
    }
  }
  if (first) throw std::invalid_argument("support: empty polyhedron");
  return best;
}

std::vector<IVec> NewtonPolyhedron::min_face_vertices(const IVec& nu) const {
  Int m = support(nu);
  std::vector<IVec> out;
  for (const auto& v : vertices)
    if (dot(nu, v) == m) out.push_back(v);
  return out;
}

namespace {

Cone vertex_normal_cone(int d, const std::vector<IVec>& gens, const IVec& v,
                        const Cone& sigma_dual) {
  std::vector<IVec> ineqs;
  for (const auto& w : gens)
    if (w != v) ineqs.push_back(vsub(w, v));
  // sigma itself: pairs nonnegatively with every generator of sigma_dual
  for (const auto& u : sigma_dual.rays) ineqs.push_back(u);
  return cone_from_inequalities(d, ineqs);
}

// Exact Fourier-Motzkin feasibility for rows c meaning c . (x,1) >= 0.
// Returns a feasible rational point if one exists.
std::optional<std::vector<Rat>> fm_feasible(int nvars, std::vector<std::vector<Rat>> rows) {
  std::vector<std::vector<std::vector<Rat>>> levels;
  for (int v = nvars - 1; v >= 0; --v) {
    levels.push_back(rows);
    std::vector<std::vector<Rat>> next;
    std::vector<const std::vector<Rat>*> pos, neg;
    for (const auto& r : rows) {
      if (r[v] > 0)
        pos.push_back(&r);
      else if (r[v] < 0)
        neg.push_back(&r);
      else
        next.push_back(r);
    }
    for (auto* p : pos)
      for (auto* nrow : neg) {
        std::vector<Rat> comb(nvars + 1);
        Rat cp = (*p)[v], cn = -(*nrow)[v];
        for (int k = 0; k <= nvars; ++k) comb[k] = cn * (*p)[k] + cp * (*nrow)[k];
        comb[v] = 0;
        next.push_back(std::move(comb));
      }
    // normalize scale so duplicates collapse
    for (auto& r : next) {
      Rat lead(0);
      for (const auto& c : r)
        if (c != 0) {
          lead = abs(c);
          break;
        }
      if (lead != 0)
        for (auto& c : r) c /= lead;
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (r[nvars] < 0) return std::nullopt;
  // Back substitution, outermost variable first.
  std::vector<Rat> x(nvars, Rat(0));
  for (int v = 0; v < nvars; ++v) {
    const auto& lvl = levels[nvars - 1 - v];
    bool has_lo = false, has_hi = false;
    Rat lo(0), hi(0);
    for (const auto& r : lvl) {
      if (r[v] == 0) continue;
      Rat rhs = r[nvars];
      for (int k = 0; k < nvars; ++k)
        if (k != v) rhs += r[k] * x[k];
      Rat bound = -rhs / r[v];
      if (r[v] > 0) {
        if (!has_lo || bound > lo) lo = bound, has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound, has_hi = true;
      }
    }
    if (has_lo && has_hi)
      x[v] = (lo + hi) / 2;
    else if (has_lo)
      x[v] = lo;
    else if (has_hi)
      x[v] = hi;
  }
  return x;
}

}  // namespace

std::optional<DominationCertificate> domination_certificate(const NewtonPolyhedron& p,
                                                            const IVec& v) {
  // A vertex is never dominated; a non-vertex lies in the hull of the
  // vertices plus the recession cone, so those suffice as the support.
  std::vector<IVec> others;
  for (const auto& w : p.vertices)
    if (w != v) others.push_back(w);
  if (std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end())
    return std::nullopt;
  if (others.empty()) return std::nullopt;
  int m = int(others.size());
  int d = int(v.size());
  std::vector<std::vector<Rat>> rows;
  for (int i = 0; i < m; ++i) {
    std::vector<Rat> r(m + 1, Rat(0));
    r[i] = 1;
    rows.push_back(r);  // lambda_i >= 0
  }
  {
    std::vector<Rat> r1(m + 1, Rat(1)), r2(m + 1, Rat(-1));
    r1[m] = -1;
    r2[m] = 1;
    rows.push_back(r1);  // sum lambda - 1 >= 0
    rows.push_back(r2);  // 1 - sum lambda >= 0
  }
  for (const auto& f : p.recession.facets) {
    std::vector<Rat> r(m + 1, Rat(0));
    for (int i = 0; i < m; ++i) r[i] = Rat(-dot(f, others[i]));
    r[m] = Rat(dot(f, v));
    rows.push_back(r);  // <f, v - sum lambda_i w_i> >= 0
  }
  (void)d;
  auto sol = fm_feasible(m, rows);
  if (!sol) return std::nullopt;
  DominationCertificate cert;
  cert.point = v;
  for (int i = 0; i < m; ++i)
    if ((*sol)[i] != 0) cert.combination.push_back({others[i], (*sol)[i]});
  return cert;
}

NewtonPolyhedron newton_polyhedron(const std::vector<IVec>& gens, const Cone& sigma_dual) {
  if (gens.empty()) throw std::invalid_argument("newton_polyhedron: empty generator set");
  NewtonPolyhedron p;
  p.gens = sorted_unique(gens);
  p.recession = sigma_dual;
  int d = sigma_dual.d;
  for (const auto& v : p.gens) {
    Cone nc = vertex_normal_cone(d, p.gens, v, sigma_dual);
    if (nc.dim == d) p.vertices.push_back(v);
  }
  if (p.vertices.empty())
    throw certification_error("newton_polyhedron: no vertices found");
  if (p.gens.size() <= 16) {
    for (const auto& v : p.gens) {
      bool is_vertex = std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end();
      if (!is_vertex && !domination_certificate(p, v))
        throw certification_error("newton_polyhedron: non-vertex without certificate");
    }
  }
  return p;
}

Fan normal_fan(const NewtonPolyhedron& p, const Cone& sigma) {
  std::vector<Cone> maximal;
  for (const auto& v : p.vertices) {
    std::vector<IVec> ineqs;
    for (const auto& w : p.gens)
      if (w != v) ineqs.push_back(vsub(w, v));
    for (const auto& f : sigma.facets) ineqs.push_back(f);
    maximal.push_back(cone_from_inequalities(sigma.d, ineqs));
  }
  return make_fan(sigma.d, sigma, maximal);
}

}  // namespace toricmot
