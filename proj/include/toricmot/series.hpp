#pragma once
#include <map>
#include <optional>

#include "toricmot/arith.hpp"

namespace toricmot {

inline long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw unsupported_error("exponent out of range");
  return v.get_si();
}

// Sparse polynomial in the two symbols L and T with rational coefficients.
struct Poly2 {
  std::map<std::pair<long, long>, Rat> terms;  // (L exponent, T exponent) -> coeff

  static Poly2 zero() { return {}; }
  static Poly2 constant(const Rat& c);
  static Poly2 monomial(long i, long j, const Rat& c);

  bool is_zero() const { return terms.empty(); }
  long deg_t() const;
  void add_term(long i, long j, const Rat& c);
  bool operator==(const Poly2& o) const { return terms == o.terms; }
};

Poly2 operator+(const Poly2& a, const Poly2& b);
Poly2 operator-(const Poly2& a, const Poly2& b);
Poly2 operator*(const Poly2& a, const Poly2& b);
Poly2 scale(const Rat& c, const Poly2& a);
Poly2 truncate_t(const Poly2& a, long tmax);
Poly2 pow_poly(const Poly2& a, int k);

// Quotient of num by (1 - L^a T^b) when the division is exact.
std::optional<Poly2> divide_exact(const Poly2& num, long a, long b);

using DenFactor = std::pair<long, long>;  // (a, b): factor 1 - L^a T^b, b > 0

Poly2 den_product(const std::vector<DenFactor>& den);

// Exact rational function scalar * num / prod (1 - L^a T^b).
struct MotivicRational {
  Rat scalar = Rat(1);
  Poly2 num;
  std::vector<DenFactor> den;  // sorted multiset

  static MotivicRational zero() { return {Rat(1), Poly2::zero(), {}}; }
  static MotivicRational from_poly(Poly2 p) { return {Rat(1), std::move(p), {}}; }
  bool is_zero() const { return scalar == 0 || num.is_zero(); }
};

MotivicRational mr_add(const MotivicRational& a, const MotivicRational& b);
MotivicRational mr_sub(const MotivicRational& a, const MotivicRational& b);
MotivicRational mr_mul(const MotivicRational& a, const MotivicRational& b);
MotivicRational mr_scale(const Rat& c, MotivicRational r);

// Cross-multiplied polynomial identity.
bool mr_equal(const MotivicRational& a, const MotivicRational& b);

// Cancel denominator factors that divide the numerator exactly.
MotivicRational normalize(MotivicRational r);

// Balanced summation with interleaved cancellation; keeps intermediate
// numerators near the irredundant size.
MotivicRational mr_sum(std::vector<MotivicRational> parts);

// Power series coefficients up to T^order; coeff[s] is a polynomial in L.
struct SeriesExpansion {
  int order = 0;
  std::vector<std::map<long, Rat>> coeff;

  SeriesExpansion() = default;
  explicit SeriesExpansion(int ord) : order(ord), coeff(size_t(ord) + 1) {}
  void add(int s, long lexp, const Rat& c);
  bool operator==(const SeriesExpansion& o) const {
    return order == o.order && coeff == o.coeff;
  }
};

SeriesExpansion expand(const MotivicRational& r, int s_max);

// Value of the T^s coefficient at L = 1.
Rat coeff_at_L1(const SeriesExpansion& e, int s);

std::string poly_to_string(const Poly2& p);
std::string mr_to_string(const MotivicRational& r);

}  // namespace toricmot
