#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace charkernel {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {
struct CycloField;
}

/// An element of the cyclotomic field Q(ζ_e), stored in the power basis
/// 1, ζ, ..., ζ^{φ(e)-1} modulo the e-th cyclotomic polynomial. Reduction is
/// eager, so two elements of the same conductor are equal iff their
/// coordinates agree. Operands of different conductors are embedded into the
/// lcm conductor first.
class Cyclotomic {
 public:
  Cyclotomic();  // zero, conductor 1
  Cyclotomic(long long v);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& q);  // NOLINT(google-explicit-constructor)

  /// ζ_e^k, k taken mod e.
  static Cyclotomic root_of_unity(unsigned e, long long k);
  /// Σ_t c_t ζ_e^t for t in [0, coeffs.size()), any length.
  static Cyclotomic from_powers(unsigned e, std::span<const Rational> coeffs);
  /// Inverse of to_string().
  static Cyclotomic parse(std::string_view text);

  unsigned conductor() const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// The same number expressed in Q(ζ_m); m must be a multiple of conductor().
  Cyclotomic embed(unsigned m) const;
  /// Image under ζ ↦ ζ^a, gcd(a, e) = 1.
  Cyclotomic galois(long long a) const;
  /// Complex conjugate (ζ ↦ ζ^-1).
  Cyclotomic conjugate() const { return galois(-1); }

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  std::optional<Integer> as_integer() const;
  /// Numerical value at ζ_e = exp(2πi/e). Cross-checks only.
  std::complex<double> evaluate() const;

  /// "a0 + a1*z(e)^1 + ..."; zero coordinates omitted, "0" for zero.
  std::string to_string() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& q);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& q) { return a *= q; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Coordinate-wise lexicographic order after embedding into a common
  /// conductor. A total order used only for deterministic sorting.
  friend std::strong_ordering compare(const Cyclotomic& a, const Cyclotomic& b);

 private:
  Cyclotomic(const detail::CycloField* field, std::vector<Rational> coeffs)
      : field_(field), coeffs_(std::move(coeffs)) {}
  static const detail::CycloField* field_for(unsigned e);
  void unify(Cyclotomic& other);

  const detail::CycloField* field_;
  std::vector<Rational> coeffs_;
};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long long>& cyclotomic_polynomial(unsigned n);

std::string rational_to_string(const Rational& q);

}  // namespace charkernel
