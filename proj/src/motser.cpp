#include "toricmot/motser.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "toricmot/parallel.hpp"

namespace toricmot {

namespace {

// Equality system rows * nu = rhs with the normal form cached across calls.
struct EqSolver {
  IntMatrix a;
  SnfResult snf;
  int d = 0;
  int rank = 0;
  std::vector<IVec> kernel;

  EqSolver(const std::vector<IVec>& rows, int dd) : a(IntMatrix::from_rows(rows, dd)), d(dd) {
    snf = smith_normal_form(a);
    for (const auto& x : snf.diag)
      if (x != 0) ++rank;
    for (int j = rank; j < d; ++j) kernel.push_back(snf.v.col(j));
  }

  std::optional<IVec> solve(const IVec& rhs) const {
    IVec ub(a.rows, Int(0));
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.rows; ++j) ub[i] += snf.u.at(i, j) * rhs[j];
    IVec y(d, Int(0));
    for (int i = 0; i < a.rows; ++i) {
      if (i < rank) {
        if (ub[i] % snf.diag[i] != 0) return std::nullopt;
        y[i] = ub[i] / snf.diag[i];
      } else if (ub[i] != 0) {
        return std::nullopt;
      }
    }
    IVec x(d, Int(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < rank; ++j) x[i] += snf.v.at(i, j) * y[j];
    return x;
  }
};

// One inequality over the free lattice coordinates: sum coeff*t >= rhs.
struct TRow {
  IVec coeff;
  Int rhs;
};

// Rational Fourier-Motzkin bounds for one variable of the system.
struct VarBounds {
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
};

VarBounds fm_var_bounds(const std::vector<TRow>& rows, int tdim, int var) {
  std::vector<std::vector<Rat>> work;
  for (const auto& r : rows) {
    std::vector<Rat> v(tdim + 1);
    for (int i = 0; i < tdim; ++i) v[i] = Rat(r.coeff[i]);
    v[tdim] = Rat(r.rhs);
    work.push_back(std::move(v));
  }
  for (int e = 0; e < tdim; ++e) {
    if (e == var) continue;
    std::vector<std::vector<Rat>> next;
    std::vector<std::vector<Rat>> pos, neg;
    for (auto& r : work) {
      if (r[e] > 0)
        pos.push_back(r);
      else if (r[e] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        std::vector<Rat> comb(tdim + 1);
        for (int k = 0; k <= tdim; ++k) comb[k] = (-n[e]) * p[k] + p[e] * n[k];
        comb[e] = 0;
        next.push_back(std::move(comb));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    work = std::move(next);
  }
  VarBounds b;
  for (const auto& r : work) {
    if (r[var] > 0) {
      Rat bound = r[tdim] / r[var];
      if (!b.has_lo || bound > b.lo) b.lo = bound, b.has_lo = true;
    } else if (r[var] < 0) {
      Rat bound = r[tdim] / r[var];
      if (!b.has_hi || bound < b.hi) b.hi = bound, b.has_hi = true;
    }
  }
  return b;
}

bool box_scan(const std::vector<TRow>& rows, int tdim, std::vector<Int>& point, int var,
              const std::vector<std::pair<Int, Int>>& box) {
  if (var == tdim) {
    for (const auto& r : rows) {
      Int v = 0;
      for (int i = 0; i < tdim; ++i) v += r.coeff[i] * point[i];
      if (v < r.rhs) return false;
    }
    return true;
  }
  for (Int t = box[var].first; t <= box[var].second; ++t) {
    point[var] = t;
    if (box_scan(rows, tdim, point, var + 1, box)) return true;
  }
  return false;
}

// Does the system admit an integer point? Exact for free rank <= 1 and for
// systems whose rows touch at most one variable; otherwise requires a bounded
// feasible region.
bool integer_feasible(const std::vector<TRow>& rows, int tdim) {
  for (const auto& r : rows) {
    bool allzero = true;
    for (const auto& c : r.coeff)
      if (c != 0) allzero = false;
    if (allzero && r.rhs > 0) return false;
  }
  if (tdim == 0) return true;

  auto single_var = [&]() {
    for (const auto& r : rows) {
      int touched = 0;
      for (const auto& c : r.coeff)
        if (c != 0) ++touched;
      if (touched > 1) return false;
    }
    return true;
  };

  if (tdim == 1 || single_var()) {
    for (int v = 0; v < tdim; ++v) {
      bool has_lo = false, has_hi = false;
      Int lo = 0, hi = 0;
      for (const auto& r : rows) {
        const Int& c = r.coeff[v];
        if (c == 0) continue;
        if (c > 0) {
          Int b = ceil_div(r.rhs, c);
          if (!has_lo || b > lo) lo = b, has_lo = true;
        } else {
          Int b = floor_div(r.rhs, c);
          if (!has_hi || b < hi) hi = b, has_hi = true;
        }
      }
      if (has_lo && has_hi && lo > hi) return false;
    }
    return true;
  }

  std::vector<std::pair<Int, Int>> box(tdim);
  for (int v = 0; v < tdim; ++v) {
    VarBounds b = fm_var_bounds(rows, tdim, v);
    if (!b.has_lo || !b.has_hi)
      throw unsupported_error("integer feasibility: unbounded fiber of rank >= 2");
    box[v] = {ceil_div(b.lo.get_num(), b.lo.get_den()),
              floor_div(b.hi.get_num(), b.hi.get_den())};
    if (box[v].first > box[v].second) return false;
  }
  std::vector<Int> point(tdim, Int(0));
  return box_scan(rows, tdim, point, 0, box);
}

// Constraint over nu with a level-dependent right-hand side: <c,nu> >= base + scoef*s.
struct NuRow {
  IVec c;
  Int base;
  int scoef;
};

struct PieceSystem {
  EqSolver solver;  // mu rows then span equations of the piece
  std::vector<NuRow> nurows;
  std::vector<std::vector<Int>> tcoeff;  // per row: coefficients over the kernel

  PieceSystem(std::vector<IVec> eqrows, int d, std::vector<NuRow> rows)
      : solver(eqrows, d), nurows(std::move(rows)) {
    for (const auto& r : nurows) {
      std::vector<Int> tc;
      for (const auto& k : solver.kernel) tc.push_back(dot(r.c, k));
      tcoeff.push_back(std::move(tc));
    }
  }

  bool admits(const IVec& rhs_eq, const Int& s) const {
    auto part = solver.solve(rhs_eq);
    if (!part) return false;
    int tdim = int(solver.kernel.size());
    std::vector<TRow> trows;
    for (size_t i = 0; i < nurows.size(); ++i) {
      TRow t;
      t.coeff = tcoeff[i];
      t.rhs = nurows[i].base + Int(nurows[i].scoef) * s - dot(nurows[i].c, *part);
      trows.push_back(std::move(t));
    }
    return integer_feasible(trows, tdim);
  }
};

// The linear functional of ord on a region, read off one minimizing vertex.
IVec ord_functional(const NewtonPolyhedron& p, const IVec& probe) {
  return p.min_face_vertices(probe).front();
}

std::vector<PieceSystem> build_piece_systems(const IdealFamily& f, const Stratum& st) {
  int d = f.dim();
  IVec u_lo;
  {
    IVec vj = ord_functional(f.cpoly[st.j - 1], st.witness_nu);
    IVec vprev(d, Int(0));
    if (st.j >= 2) vprev = ord_functional(f.cpoly[st.j - 2], st.witness_nu);
    u_lo = vsub(vj, vprev);
    if (dot(st.witness_nu, u_lo) != f.phi(st.j, st.witness_nu).value)
      throw certification_error("stratum series: lower functional mismatch");
  }
  std::vector<PieceSystem> systems;
  for (const auto& piece : refinement_pieces(f, st.j, st.theta)) {
    IVec probe = piece.interior_point();
    Int lo = f.phi(st.j, probe).value;
    ExtInt hi = f.phi(st.j + 1, probe);
    if (!lt(lo, hi)) continue;  // no stratum points over this piece

    std::vector<NuRow> rows;
    for (const auto& fc : piece.facets) rows.push_back({fc, Int(0), 0});
    for (const auto& fc : st.theta.facets) rows.push_back({fc, Int(1), 0});
    for (const auto& g : f.sg.gens) rows.push_back({g, Int(1), 0});
    rows.push_back({vneg(u_lo), Int(0), -1});
    if (st.j < f.n()) {
      IVec vj = ord_functional(f.cpoly[st.j - 1], st.witness_nu);
      IVec vnext = ord_functional(f.cpoly[st.j], probe);
      IVec u_hi = vsub(vnext, vj);
      if (dot(probe, u_hi) != f.phi(st.j + 1, probe).value)
        throw certification_error("stratum series: upper functional mismatch");
      rows.push_back({u_hi, Int(1), 1});
    }
    std::vector<IVec> eqrows;
    for (int i : st.mu_basis) eqrows.push_back(f.sg.gens[i]);
    for (const auto& e : piece.span_eqs) eqrows.push_back(e);
    systems.emplace_back(std::move(eqrows), d, std::move(rows));
  }
  return systems;
}

// Odometer over nondecreasing tuples in [1..s]^l.
bool next_tuple(std::vector<Int>& w, const Int& s) {
  int l = int(w.size());
  for (int i = l - 1; i >= 0; --i) {
    if (w[i] < s) {
      ++w[i];
      for (int k = i + 1; k < l; ++k) w[k] = w[i];
      return true;
    }
  }
  return false;
}

// Full-rank planar strata admit a direct lattice walk: points and classes
// correspond one to one, so the slice polygons are scanned outright.
struct ScanPiece {
  int dim = 2;
  IVec ray;                                   // dim 1: primitive direction
  std::vector<NuRow> rows;                    // constraints over nu
  std::vector<std::pair<Int, Int>> xfrac;     // (ray_x, phi_j(ray)) slopes
};

struct ClassEnumerator {
  int l = 0;
  std::vector<PieceSystem> systems;  // generic fiber path
  bool planar = false;
  IVec asum;  // exponent a = l*s - <asum, nu> on the stratum
  std::vector<ScanPiece> scan;
};

ClassEnumerator make_enumerator(const IdealFamily& f, const Stratum& st) {
  ClassEnumerator en;
  en.l = st.l;
  en.systems = build_piece_systems(f, st);
  if (!(st.l == 2 && f.dim() == 2)) return en;
  en.planar = true;
  en.asum = IVec(2, Int(0));
  for (int i : st.mu_basis) en.asum = vadd(en.asum, f.sg.gens[i]);
  IVec u_lo;
  {
    IVec vj = ord_functional(f.cpoly[st.j - 1], st.witness_nu);
    IVec vprev(2, Int(0));
    if (st.j >= 2) vprev = ord_functional(f.cpoly[st.j - 2], st.witness_nu);
    u_lo = vsub(vj, vprev);
  }
  for (const auto& piece : refinement_pieces(f, st.j, st.theta)) {
    IVec probe = piece.interior_point();
    Int lo = f.phi(st.j, probe).value;
    ExtInt hi = f.phi(st.j + 1, probe);
    if (!lt(lo, hi)) continue;
    ScanPiece sp;
    sp.dim = piece.dim;
    if (piece.dim == 1) sp.ray = piece.rays[0];
    for (const auto& fc : piece.facets) sp.rows.push_back({fc, Int(1), 0});  // relint
    for (const auto& g : f.sg.gens) sp.rows.push_back({g, Int(1), 0});
    sp.rows.push_back({vneg(u_lo), Int(0), -1});
    if (st.j < f.n()) {
      IVec vj = ord_functional(f.cpoly[st.j - 1], st.witness_nu);
      IVec u_hi = vsub(ord_functional(f.cpoly[st.j], probe), vj);
      sp.rows.push_back({u_hi, Int(1), 1});
    }
    for (const auto& r : piece.rays) {
      Int phi = f.phi(st.j, r).value;
      if (phi <= 0) throw certification_error("planar scan: nonpositive level at a ray");
      sp.xfrac.push_back({r[0], phi});
    }
    en.scan.push_back(std::move(sp));
  }
  return en;
}

// Enumerate stratum classes for orders in (s_from, s_to] into `classes`.
void extend_classes(const ClassEnumerator& en, int s_from, int s_to,
                    std::map<std::pair<long, long>, long>& classes) {
  if (s_to <= s_from) return;
  size_t count = size_t(s_to - s_from);
  std::vector<std::map<std::pair<long, long>, long>> per_s(count);

  if (en.planar) {
    parallel_for_each(count, [&](size_t idx) {
      Int s = Int(long(s_from) + long(idx) + 1);
      long s_l = to_long(s);
      std::vector<long> slots(size_t(2 * s_l + 1), 0);
      for (const auto& sp : en.scan) {
        if (sp.dim == 1) {
          // multiples k of the primitive ray
          Int klo = 1, khi = -1;
          bool empty = false, bounded = false;
          for (const auto& row : sp.rows) {
            Int c = dot(row.c, sp.ray);
            Int rhs = row.base + Int(row.scoef) * s;
            if (c > 0) {
              Int b = ceil_div(rhs, c);
              if (b > klo) klo = b;
            } else if (c < 0) {
              Int b = floor_div(rhs, c);
              if (!bounded || b < khi) khi = b, bounded = true;
            } else if (rhs > 0) {
              empty = true;
            }
          }
          if (empty || !bounded) {
            if (!bounded && !empty)
              throw certification_error("planar scan: unbounded ray piece");
            continue;
          }
          Int astep = dot(en.asum, sp.ray);
          for (Int k = klo; k <= khi; ++k) {
            Int a = Int(2) * s - astep * k;
            ++slots[size_t(to_long(a))];
          }
          continue;
        }
        // 2-dimensional piece: x range of conv{0, s*r/phi(r)}, then y intervals
        Int xlo = 0, xhi = 0;
        for (const auto& [px, q] : sp.xfrac) {
          Int lo = floor_div(s * px, q), hi = ceil_div(s * px, q);
          if (lo < xlo) xlo = lo;
          if (hi > xhi) xhi = hi;
        }
        for (Int x = xlo; x <= xhi; ++x) {
          Int ylo = 0, yhi = 0;
          bool has_lo = false, has_hi = false, empty = false;
          for (const auto& row : sp.rows) {
            Int rhs = row.base + Int(row.scoef) * s - row.c[0] * x;
            const Int& cy = row.c[1];
            if (cy > 0) {
              Int b = ceil_div(rhs, cy);
              if (!has_lo || b > ylo) ylo = b, has_lo = true;
            } else if (cy < 0) {
              Int b = floor_div(rhs, cy);
              if (!has_hi || b < yhi) yhi = b, has_hi = true;
            } else if (rhs > 0) {
              empty = true;
              break;
            }
          }
          if (empty || !has_lo || !has_hi || ylo > yhi) continue;
          Int a = Int(2) * s - en.asum[0] * x - en.asum[1] * ylo;
          for (Int y = ylo; y <= yhi; ++y) {
            ++slots[size_t(to_long(a))];
            a -= en.asum[1];
          }
        }
      }
      auto& out = per_s[idx];
      for (size_t a = 0; a < slots.size(); ++a)
        if (slots[a]) out[{s_l, long(a)}] = slots[a];
    });
  } else {
    parallel_for_each(count, [&](size_t idx) {
      Int s = Int(long(s_from) + long(idx) + 1);
      std::vector<Int> w(en.l, Int(1));
      auto& out = per_s[idx];
      if (Int(1) > s) return;
      do {
        IVec rhs(w.begin(), w.end());
        Int wsum = 0;
        for (const auto& x : w) wsum += x;
        for (const auto& sys : en.systems) {
          IVec eqrhs = rhs;
          eqrhs.resize(size_t(sys.solver.a.rows), Int(0));
          if (sys.admits(eqrhs, s)) {
            out[{to_long(s), to_long(Int(en.l) * s - wsum)}] += 1;
            break;
          }
        }
      } while (next_tuple(w, s));
    });
  }
  for (const auto& part : per_s)
    for (const auto& [key, count_] : part) classes[key] += count_;
}

}  // namespace

std::map<std::pair<long, long>, long> class_monomials(const IdealFamily& f,
                                                      const Stratum& st, int s_max) {
  if (st.empty) return {};
  if (s_max < 1) throw std::invalid_argument("class_monomials: s_max must be positive");
  ClassEnumerator en = make_enumerator(f, st);
  std::map<std::pair<long, long>, long> classes;
  extend_classes(en, 0, s_max, classes);
  return classes;
}

namespace {

std::vector<DenFactor> to_den(const std::vector<PolePair>& poles) {
  std::vector<DenFactor> den;
  for (const auto& [a, b] : poles) den.push_back({to_long(a), to_long(b)});
  std::sort(den.begin(), den.end());
  return den;
}

}  // namespace

MotivicRational stratum_series(const IdealFamily& f, const Stratum& st, int guard) {
  if (st.empty) return MotivicRational::zero();
  std::vector<DenFactor> base = to_den(st.recon_poles);
  ClassEnumerator en = make_enumerator(f, st);
  // With full-rank classes the numerator degree stays below the denominator
  // degree (fundamental parallelepiped bound); a genuine projection can carry
  // Frobenius-type gaps beyond it, so the numerator degree adapts until a
  // clean guard window appears.
  for (int mult = 1; mult <= 2; ++mult) {
    std::vector<DenFactor> den;
    for (int k = 0; k < mult; ++k) den.insert(den.end(), base.begin(), base.end());
    std::sort(den.begin(), den.end());
    long degb = 0;
    for (const auto& [a, b] : den) degb += b;
    long cap = 3 * degb + 1500;
    std::map<std::pair<long, long>, long> classes;
    int s_max = int(degb) + 2 * guard;
    extend_classes(en, 0, s_max, classes);
    for (int round = 0; round < 64; ++round) {
      Poly2 series;
      for (const auto& [key, count] : classes)
        series.add_term(key.second, key.first, Rat(count));
      Poly2 prod = truncate_t(series * den_product(den), s_max);
      long dstar = 0;
      for (const auto& [e, c] : prod.terms) dstar = std::max(dstar, e.second);
      if (dstar + guard <= s_max) {
        Poly2 lm1 = Poly2::monomial(1, 0, Rat(1)) - Poly2::constant(Rat(1));
        MotivicRational r;
        r.num = pow_poly(lm1, st.l) * prod;
        r.den = den;
        return normalize(std::move(r));
      }
      long next = dstar + guard;
      if (next > cap) break;
      extend_classes(en, s_max, int(next), classes);
      s_max = int(next);
    }
  }
  throw certification_error("stratum_series: reconstruction guard failed");
}

FaceComputation compute_face(const SemigroupData& face_sg, Cone eta, int guard) {
  FaceComputation fc;
  fc.eta = std::move(eta);
  fc.face_sg = face_sg;
  if (face_sg.is_trivial()) {
    fc.trivial = true;
    fc.q_lcm = 1;
    fc.pole_candidates = {{Int(0), Int(1)}};
    return fc;
  }
  IdealFamily fam = phi_sequences(face_sg);
  fc.strata = enumerate_strata(fam);
  fc.series.assign(fc.strata.size(), MotivicRational::zero());
  parallel_for_each(fc.strata.size(), [&](size_t i) {
    const Stratum& st = fc.strata[i];
    if (!st.empty && st.contributes) fc.series[i] = stratum_series(fam, st, guard);
  });
  std::set<PolePair> poles;
  for (const auto& st : fc.strata) {
    if (st.empty || !st.contributes) continue;
    fc.q_lcm = lcm(fc.q_lcm, st.q);
    poles.insert(st.poles.begin(), st.poles.end());
  }
  fc.pole_candidates.assign(poles.begin(), poles.end());
  return fc;
}

std::vector<FaceComputation> compute_local(const SemigroupData& s, int guard) {
  std::vector<FaceComputation> out;
  for (const auto& eta : semigroup_faces(s)) {
    std::vector<IVec> basis;
    SemigroupData fs = face_semigroup(s, eta, &basis);
    FaceComputation fc = compute_face(fs, eta, guard);
    fc.face_basis = basis;
    out.push_back(std::move(fc));
  }
  return out;
}

namespace {

MotivicRational one_over_one_minus_t() {
  MotivicRational r;
  r.num = Poly2::constant(Rat(1));
  r.den = {{0, 1}};
  return r;
}

}  // namespace

MotivicRational assemble_local(const std::vector<FaceComputation>& faces, bool arithmetic) {
  std::vector<MotivicRational> parts;
  for (const auto& fc : faces) {
    if (fc.trivial) {
      parts.push_back(one_over_one_minus_t());
      continue;
    }
    for (size_t i = 0; i < fc.strata.size(); ++i) {
      const Stratum& st = fc.strata[i];
      if (st.empty || !st.contributes) continue;
      Rat w = arithmetic ? ratio(Int(1), st.q) : Rat(1);
      parts.push_back(mr_scale(w, fc.series[i]));
    }
  }
  return mr_sum(std::move(parts));
}

MotivicRational assemble_difference(const std::vector<FaceComputation>& faces) {
  std::vector<MotivicRational> parts;
  for (const auto& fc : faces) {
    if (fc.trivial) continue;
    for (size_t i = 0; i < fc.strata.size(); ++i) {
      const Stratum& st = fc.strata[i];
      if (st.empty || !st.contributes || st.q == 1) continue;
      Rat w = ratio(Int(1), st.q) - Rat(1);
      parts.push_back(mr_scale(w, fc.series[i]));
    }
  }
  return mr_sum(std::move(parts));
}

MotivicRational aux_series(const SemigroupData& s, bool arithmetic, int guard) {
  if (s.is_trivial()) return one_over_one_minus_t();
  FaceComputation fc = compute_face(s, Cone{}, guard);
  std::vector<MotivicRational> parts;
  for (size_t i = 0; i < fc.strata.size(); ++i) {
    const Stratum& st = fc.strata[i];
    if (st.empty || !st.contributes) continue;
    Rat w = arithmetic ? ratio(Int(1), st.q) : Rat(1);
    parts.push_back(mr_scale(w, fc.series[i]));
  }
  return mr_sum(std::move(parts));
}

MotivicRational local_series(const SemigroupData& s, bool arithmetic, int guard) {
  return assemble_local(compute_local(s, guard), arithmetic);
}

MotivicRational difference_series(const SemigroupData& s, int guard) {
  auto faces = compute_local(s, guard);
  MotivicRational arith = assemble_local(faces, true);
  MotivicRational geom = assemble_local(faces, false);
  MotivicRational direct = assemble_difference(faces);
  MotivicRational sub = mr_sub(arith, geom);
  if (!mr_equal(sub, direct))
    throw certification_error("difference_series: stratum-wise sum disagrees");
  return direct;
}

Int q_lcm_over_faces(const std::vector<FaceComputation>& faces) {
  Int q = 1;
  for (const auto& fc : faces) q = lcm(q, fc.q_lcm);
  return q;
}

std::vector<PolePair> pole_union_over_faces(const std::vector<FaceComputation>& faces) {
  std::set<PolePair> u;
  for (const auto& fc : faces) u.insert(fc.pole_candidates.begin(), fc.pole_candidates.end());
  return {u.begin(), u.end()};
}

MotivicRational normal_local_series(const SemigroupData& s, int guard) {
  if (!s.is_saturated)
    throw validation_error("normal_local_series: semigroup not flagged saturated");
  IdealFamily fam = phi_sequences(s);
  auto strata = enumerate_strata(fam);
  std::vector<MotivicRational> series(strata.size(), MotivicRational::zero());
  parallel_for_each(strata.size(), [&](size_t i) {
    if (!strata[i].empty) series[i] = stratum_series(fam, strata[i], guard);
  });
  std::vector<MotivicRational> parts{one_over_one_minus_t()};
  for (size_t i = 0; i < strata.size(); ++i) {
    if (strata[i].empty) continue;
    parts.push_back(mr_scale(ratio(Int(1), strata[i].q), series[i]));
  }
  return mr_sum(std::move(parts));
}

MotivicRational global_series_normal(const SemigroupData& s, int guard) {
  if (!s.is_saturated)
    throw validation_error("global_series_normal: semigroup not flagged saturated");
  Poly2 lm1 = Poly2::monomial(1, 0, Rat(1)) - Poly2::constant(Rat(1));
  std::vector<MotivicRational> parts;
  for (const auto& theta : semigroup_faces(s)) {
    SemigroupData piece = quotient_face_semigroup(s, theta);
    MotivicRational local = normal_local_series(piece, guard);
    int codim = s.d - theta.dim;
    parts.push_back(mr_mul(MotivicRational::from_poly(pow_poly(lm1, codim)), local));
  }
  return mr_sum(std::move(parts));
}

NicaiseResult check_nicaise(const SemigroupData& s) {
  NicaiseResult res;
  res.verdict = true;
  for (int l = 1; l <= s.d; ++l) {
    auto jac = log_jacobian_ideal(s, l);
    auto poly = newton_polyhedron(jac, s.cone_dual);
    for (const auto& v : poly.vertices) {
      NicaiseCertificate cert;
      cert.level = l;
      cert.vertex = v;
      int n = s.n();
      std::vector<int> idx(l);
      for (int i = 0; i < l; ++i) idx[i] = i;
      bool done = false;
      while (!done) {
        IVec sum(s.d, Int(0));
        for (int i : idx) sum = vadd(sum, s.gens[i]);
        if (sum == v) {
          std::vector<IVec> rows;
          for (int i : idx) rows.push_back(s.gens[i]);
          IntMatrix m = IntMatrix::from_rows(rows, s.d);
          if (lattice_rank(m) == l && is_part_of_basis(m)) {
            cert.ok = true;
            cert.subset = idx;
            break;
          }
        }
        int p = l - 1;
        while (p >= 0 && idx[p] == n - l + p) --p;
        if (p < 0) {
          done = true;
        } else {
          ++idx[p];
          for (int t = p + 1; t < l; ++t) idx[t] = idx[t - 1] + 1;
        }
      }
      if (!cert.ok) res.verdict = false;
      res.certificates.push_back(std::move(cert));
    }
  }
  return res;
}

MotivicRational curve_closed_form(const std::vector<Int>& gens) {
  if (gens.empty()) throw validation_error("curve_closed_form: no generators");
  Int g = 0;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] <= 0) throw validation_error("curve_closed_form: generators must be positive");
    if (i > 0 && gens[i] <= gens[i - 1])
      throw validation_error("curve_closed_form: generators must increase");
    g = gcd(g, gens[i]);
  }
  if (g != 1) throw validation_error("curve_closed_form: generators must have gcd 1");
  std::vector<Int> q(gens.size());
  Int acc = 0;
  for (size_t i = 0; i < gens.size(); ++i) {
    acc = gcd(acc, gens[i]);
    q[i] = acc;
  }
  MotivicRational inner = MotivicRational::zero();
  {
    MotivicRational t0;
    t0.scalar = ratio(Int(1), q[0]);
    t0.num = Poly2::monomial(0, to_long(gens[0]), Rat(1));
    t0.den = {{0, to_long(gens[0])}};
    inner = mr_add(inner, t0);
  }
  for (size_t i = 1; i < gens.size(); ++i) {
    Rat w = ratio(q[i - 1] - q[i], q[i - 1] * q[i]);
    if (w == 0) continue;
    long a = to_long(gens[i] - gens[0]);
    long b = to_long(gens[i]);
    MotivicRational ti;
    ti.scalar = w;
    ti.num = Poly2::monomial(a, b, Rat(1));
    ti.den = {{a, b}};
    inner = mr_add(inner, ti);
  }
  MotivicRational factor;
  factor.num = Poly2::monomial(1, 0, Rat(1)) - Poly2::constant(Rat(1));
  factor.den = {{1, 1}};
  return normalize(mr_add(one_over_one_minus_t(), mr_mul(factor, inner)));
}

namespace {

// One admissible small-generator pattern of a face semigroup.
struct KeyPattern {
  std::vector<int> idx;        // indices of the pattern
  std::vector<int> basis;      // lex-first independent subset
  std::vector<int> dependent;  // pattern members outside the basis
  std::unique_ptr<EqSolver> solver;
  std::vector<int> inspan_out;   // non-members inside the span: value determined
  std::vector<int> offspan_out;  // non-members needing a fiber constraint
  int l = 0;
  Int q = 1;
};

void oracle_accumulate(const SemigroupData& fs, int s_max, bool arithmetic,
                       SeriesExpansion& out) {
  int d = fs.d, n = fs.n();
  std::vector<KeyPattern> patterns;
  for (int mask = 1; mask < (1 << n); ++mask) {
    KeyPattern kp;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) kp.idx.push_back(i);
    // discard patterns lying inside a proper face of the dual cone
    bool contributes = true;
    for (const auto& ray : fs.cone.rays) {
      bool positive = false;
      for (int i : kp.idx)
        if (dot(ray, fs.gens[i]) > 0) positive = true;
      if (!positive) contributes = false;
    }
    if (!contributes) continue;
    std::vector<IVec> rows;
    for (int i : kp.idx) {
      rows.push_back(fs.gens[i]);
      if (lattice_rank(IntMatrix::from_rows(rows, d)) == int(rows.size()))
        kp.basis.push_back(i);
      else {
        rows.pop_back();
        kp.dependent.push_back(i);
      }
    }
    kp.l = int(kp.basis.size());
    std::vector<IVec> allrows;
    for (int i : kp.idx) allrows.push_back(fs.gens[i]);
    kp.q = lattice_index(IntMatrix::from_rows(allrows, d));
    kp.solver = std::make_unique<EqSolver>(rows, d);
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) continue;
      bool inspan = true;
      for (const auto& k : kp.solver->kernel)
        if (dot(k, fs.gens[i]) != 0) inspan = false;
      (inspan ? kp.inspan_out : kp.offspan_out).push_back(i);
    }
    for (int i : kp.dependent)
      for (const auto& k : kp.solver->kernel)
        if (dot(k, fs.gens[i]) != 0)
          throw certification_error("oracle: dependent generator escapes the span");
    patterns.push_back(std::move(kp));
  }

  std::vector<std::map<long, Rat>> acc(size_t(s_max) + 1);
  parallel_for_each(size_t(s_max), [&](size_t sidx) {
    Int s = Int(long(sidx) + 1);
    auto& bucket = acc[sidx + 1];
    for (const auto& kp : patterns) {
      int r = kp.l;
      std::vector<Int> v(r, Int(1));
      bool more = r > 0;
      while (more) {
        auto part = kp.solver->solve(IVec(v.begin(), v.end()));
        if (part) {
          bool ok = true;
          std::map<int, Int> values;
          for (size_t bi = 0; bi < kp.basis.size(); ++bi) values[kp.basis[bi]] = v[bi];
          for (int i : kp.dependent) {
            Int val = dot(*part, fs.gens[i]);
            if (val < 1 || val > s) ok = false;
            values[i] = val;
          }
          for (int i : kp.inspan_out) {
            if (dot(*part, fs.gens[i]) <= s) ok = false;
          }
          if (ok) {
            std::vector<TRow> rows;
            for (int i : kp.offspan_out) {
              TRow t;
              for (const auto& k : kp.solver->kernel) t.coeff.push_back(dot(k, fs.gens[i]));
              t.rhs = s + 1 - dot(*part, fs.gens[i]);
              rows.push_back(std::move(t));
            }
            if (integer_feasible(rows, int(kp.solver->kernel.size()))) {
              // greedy minimum over the pattern values
              std::vector<int> order = kp.idx;
              std::stable_sort(order.begin(), order.end(),
                               [&](int a, int b) { return values.at(a) < values.at(b); });
              Int ord = 0;
              std::vector<IVec> sel;
              for (int i : order) {
                sel.push_back(fs.gens[i]);
                if (lattice_rank(IntMatrix::from_rows(sel, d)) == int(sel.size()))
                  ord += values[i];
                else
                  sel.pop_back();
              }
              long a = to_long(Int(kp.l) * s - ord);
              Rat w = arithmetic ? ratio(Int(1), kp.q) : Rat(1);
              // (L-1)^l L^a expanded over the binomial coefficients
              Int binom = 1;
              for (int k = 0; k <= kp.l; ++k) {
                Rat c = w * Rat(binom) * ((kp.l - k) % 2 == 0 ? 1 : -1);
                auto& slot = bucket[a + k];
                slot += c;
                if (slot == 0) bucket.erase(a + k);
                binom = binom * (kp.l - k) / (k + 1);
              }
            }
          }
        }
        // odometer over [1..s]^r
        more = false;
        for (int i = r - 1; i >= 0; --i) {
          if (v[i] < s) {
            ++v[i];
            for (int t = i + 1; t < r; ++t) v[t] = 1;
            more = true;
            break;
          }
        }
      }
    }
  });
  for (int s = 1; s <= s_max; ++s)
    for (const auto& [le, c] : acc[s]) out.add(s, le, c);
}

}  // namespace

SeriesExpansion oracle_series(const SemigroupData& s, int s_max, bool arithmetic) {
  SeriesExpansion out(s_max);
  if (s.is_trivial()) {
    for (int t = 0; t <= s_max; ++t) out.add(t, 0, Rat(1));
    return out;
  }
  for (const auto& eta : semigroup_faces(s)) {
    SemigroupData fs = face_semigroup(s, eta);
    if (fs.is_trivial()) {
      for (int t = 0; t <= s_max; ++t) out.add(t, 0, Rat(1));
      continue;
    }
    oracle_accumulate(fs, s_max, arithmetic, out);
  }
  return out;
}

}  // namespace toricmot
