#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricmot {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;

// Input rejected by semantic validation (CLI exit code 2).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};

// Internal self-check failed, e.g. a reconstruction guard (CLI exit code 3).
struct certification_error : std::runtime_error {
  explicit certification_error(const std::string& m) : std::runtime_error(m) {}
};

// Input is outside the supported desk-scale envelope.
struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string& m) : std::runtime_error(m) {}
};

// mpq_class(n, d) keeps the fraction as given; quotients must be canonicalized
// before any comparison.
inline Rat ratio(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IVec vadd(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec vsub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec vscale(const Int& c, const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline IVec vneg(const IVec& a) { return vscale(-1, a); }

inline bool is_zero(const IVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline Int content(const IVec& a) {
  Int g = 0;
  for (const auto& x : a) g = gcd(g, x);
  return g;
}

// Divide out the content so the vector is primitive; zero stays zero.
inline IVec primitive(IVec a) {
  Int g = content(a);
  if (g > 1)
    for (auto& x : a) x /= g;
  return a;
}

inline bool lex_less(const IVec& a, const IVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// A value in Z together with +infinity, used for the last step of the
// piecewise-linear sequences where the next function is unbounded.
struct ExtInt {
  bool infinite = false;
  Int value = 0;
  static ExtInt inf() { return ExtInt{true, 0}; }
  static ExtInt of(Int v) { return ExtInt{false, std::move(v)}; }
  bool operator==(const ExtInt& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

inline bool lt(const Int& a, const ExtInt& b) { return b.infinite || a < b.value; }

}  // namespace toricmot
