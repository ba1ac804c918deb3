#include "toricmot/series.hpp"

#include <algorithm>
#include <sstream>

namespace toricmot {

Poly2 Poly2::constant(const Rat& c) {
  Poly2 p;
  if (c != 0) p.terms[{0, 0}] = c;
  return p;
}

Poly2 Poly2::monomial(long i, long j, const Rat& c) {
  Poly2 p;
  if (c != 0) p.terms[{i, j}] = c;
  return p;
}

long Poly2::deg_t() const {
  long d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e.second);
  return d;
}

void Poly2::add_term(long i, long j, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(i, j);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms[key] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e.first, e.second, c);
  return r;
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
  Poly2 r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e.first, e.second, -c);
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms)
      r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return r;
}

Poly2 scale(const Rat& c, const Poly2& a) {
  Poly2 r;
  if (c == 0) return r;
  for (const auto& [e, co] : a.terms) r.terms[e] = c * co;
  return r;
}

Poly2 truncate_t(const Poly2& a, long tmax) {
  Poly2 r;
  for (const auto& [e, c] : a.terms)
    if (e.second <= tmax) r.terms[e] = c;
  return r;
}

Poly2 pow_poly(const Poly2& a, int k) {
  Poly2 r = Poly2::constant(Rat(1));
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

std::optional<Poly2> divide_exact(const Poly2& num, long a, long b) {
  if (b <= 0) throw std::invalid_argument("divide_exact: factor needs positive T degree");
  if (num.is_zero()) return Poly2::zero();
  if (a < 0) throw std::invalid_argument("divide_exact: factor needs nonnegative L degree");
  // Orbit criterion: with a >= 0 and b > 0 the factor divides exactly when
  // the coefficients along every (a,b)-orbit sum to zero.
  {
    std::map<std::pair<long, long>, Rat> orbit;
    for (const auto& [e, c] : num.terms) {
      long k = e.second / b;
      auto key = std::make_pair(e.first - a * k, e.second - b * k);
      auto it = orbit.find(key);
      if (it == orbit.end()) {
        orbit[key] = c;
      } else {
        it->second += c;
        if (it->second == 0) orbit.erase(it);
      }
    }
    if (!orbit.empty()) return std::nullopt;
  }
  long bound = num.deg_t() - b;  // quotient T degree cannot exceed this
  // T-major ordering makes the forced minimal term the first entry.
  std::map<std::pair<long, long>, Rat> rem;
  for (const auto& [e, c] : num.terms) rem[{e.second, e.first}] = c;
  Poly2 quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    auto [te, le] = it->first;
    Rat c = it->second;
    rem.erase(it);
    if (te > bound) return std::nullopt;
    quot.add_term(le, te, c);
    auto key = std::make_pair(te + b, le + a);
    auto jt = rem.find(key);
    if (jt == rem.end()) {
      rem[key] = c;
    } else {
      jt->second += c;
      if (jt->second == 0) rem.erase(jt);
    }
  }
  return quot;
}

Poly2 den_product(const std::vector<DenFactor>& den) {
  Poly2 p = Poly2::constant(Rat(1));
  for (const auto& [a, b] : den) {
    Poly2 f = Poly2::constant(Rat(1));
    f.add_term(a, b, Rat(-1));
    p = p * f;
  }
  return p;
}

namespace {

std::vector<DenFactor> multiset_union(const std::vector<DenFactor>& a,
                                      const std::vector<DenFactor>& b) {
  std::map<DenFactor, int> count;
  std::map<DenFactor, int> ca, cb;
  for (const auto& f : a) ++ca[f];
  for (const auto& f : b) ++cb[f];
  for (const auto& [f, c] : ca) count[f] = c;
  for (const auto& [f, c] : cb) count[f] = std::max(count[f], c);
  std::vector<DenFactor> out;
  for (const auto& [f, c] : count)
    for (int i = 0; i < c; ++i) out.push_back(f);
  return out;
}

std::vector<DenFactor> multiset_diff(const std::vector<DenFactor>& a,
                                     const std::vector<DenFactor>& b) {
  std::map<DenFactor, int> count;
  for (const auto& f : a) ++count[f];
  for (const auto& f : b) --count[f];
  std::vector<DenFactor> out;
  for (const auto& [f, c] : count)
    for (int i = 0; i < c; ++i) out.push_back(f);
  return out;
}

}  // namespace

MotivicRational mr_add(const MotivicRational& a, const MotivicRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  MotivicRational r;
  r.den = multiset_union(a.den, b.den);
  Poly2 na = scale(a.scalar, a.num) * den_product(multiset_diff(r.den, a.den));
  Poly2 nb = scale(b.scalar, b.num) * den_product(multiset_diff(r.den, b.den));
  r.num = na + nb;
  r.scalar = Rat(1);
  if (r.num.is_zero()) r.den.clear();
  return r;
}

MotivicRational mr_sub(const MotivicRational& a, const MotivicRational& b) {
  return mr_add(a, mr_scale(Rat(-1), b));
}

MotivicRational mr_mul(const MotivicRational& a, const MotivicRational& b) {
  MotivicRational r;
  r.scalar = a.scalar * b.scalar;
  r.num = a.num * b.num;
  r.den = a.den;
  r.den.insert(r.den.end(), b.den.begin(), b.den.end());
  std::sort(r.den.begin(), r.den.end());
  return r;
}

MotivicRational mr_scale(const Rat& c, MotivicRational r) {
  r.scalar *= c;
  if (r.scalar == 0) return MotivicRational::zero();
  return r;
}

bool mr_equal(const MotivicRational& a, const MotivicRational& b) {
  Poly2 lhs = scale(a.scalar, a.num) * den_product(b.den);
  Poly2 rhs = scale(b.scalar, b.num) * den_product(a.den);
  return lhs == rhs;
}

MotivicRational normalize(MotivicRational r) {
  if (r.is_zero()) return MotivicRational::zero();
  Poly2 n = scale(r.scalar, r.num);
  r.scalar = Rat(1);
  std::vector<DenFactor> kept;
  std::sort(r.den.begin(), r.den.end());
  for (const auto& f : r.den) {
    auto q = divide_exact(n, f.first, f.second);
    if (q)
      n = *q;
    else
      kept.push_back(f);
  }
  r.num = n;
  r.den = kept;
  return r;
}

MotivicRational mr_sum(std::vector<MotivicRational> parts) {
  if (parts.empty()) return MotivicRational::zero();
  while (parts.size() > 1) {
    std::vector<MotivicRational> next;
    for (size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(normalize(mr_add(parts[i], parts[i + 1])));
    if (parts.size() % 2) next.push_back(parts.back());
    parts = std::move(next);
  }
  return normalize(parts[0]);
}

void SeriesExpansion::add(int s, long lexp, const Rat& c) {
  if (c == 0 || s > order) return;
  auto& m = coeff[s];
  auto it = m.find(lexp);
  if (it == m.end()) {
    m[lexp] = c;
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

SeriesExpansion expand(const MotivicRational& r, int s_max) {
  Poly2 p = truncate_t(scale(r.scalar, r.num), s_max);
  for (const auto& [a, b] : r.den) {
    // multiply by the geometric series of 1/(1 - L^a T^b)
    Poly2 next;
    for (const auto& [e, c] : p.terms) {
      for (long k = 0; e.second + k * b <= s_max; ++k)
        next.add_term(e.first + k * a, e.second + k * b, c);
    }
    p = next;
  }
  SeriesExpansion out(s_max);
  for (const auto& [e, c] : p.terms) out.add(int(e.second), e.first, c);
  return out;
}

Rat coeff_at_L1(const SeriesExpansion& e, int s) {
  Rat total(0);
  for (const auto& [le, c] : e.coeff[s]) total += c;
  return total;
}

std::string poly_to_string(const Poly2& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    Rat cc = c;
    if (!first) os << (cc >= 0 ? " + " : " - ");
    else if (cc < 0)
      os << "-";
    first = false;
    if (cc < 0) cc = -cc;
    bool has_sym = e.first != 0 || e.second != 0;
    if (cc != 1 || !has_sym) os << cc;
    if (e.first != 0) os << "L" << (e.first == 1 ? "" : "^" + std::to_string(e.first));
    if (e.second != 0) os << "T" << (e.second == 1 ? "" : "^" + std::to_string(e.second));
  }
  return os.str();
}

std::string mr_to_string(const MotivicRational& r) {
  std::ostringstream os;
  if (r.scalar != 1) os << "(" << r.scalar << ") * ";
  os << "(" << poly_to_string(r.num) << ")";
  for (const auto& [a, b] : r.den) {
    os << " / (1";
    os << " - ";
    if (a != 0) os << "L" << (a == 1 ? "" : "^" + std::to_string(a));
    os << "T" << (b == 1 ? "" : "^" + std::to_string(b));
    os << ")";
  }
  return os.str();
}

}  // namespace toricmot
