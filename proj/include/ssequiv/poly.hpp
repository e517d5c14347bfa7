#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssequiv/rational.hpp"

namespace ssequiv {

/// Univariate polynomial over Q. Coefficients are stored in ascending degree
/// with no trailing zeros, so the zero polynomial is the empty list.
class Poly {
 public:
  Poly() = default;
  Poly(Rational constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rational> coeffs);

  /// c * x^degree
  static Poly monomial(Rational c, std::size_t degree);
  /// The indeterminate x.
  static Poly x() { return monomial(Rational(1), 1); }

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  [[nodiscard]] bool is_monic() const { return !is_zero() && coeffs_.back().is_one(); }

  [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(); }
  /// Leading coefficient; zero for the zero polynomial.
  [[nodiscard]] Rational leading() const { return is_zero() ? Rational() : coeffs_.back(); }
  [[nodiscard]] Poly monic() const;

  [[nodiscard]] std::string str(std::string_view var = "λ") const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }
  friend Poly operator-(const Poly& p);
  friend bool operator==(const Poly& lhs, const Poly& rhs) = default;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

Poly pow(const Poly& base, unsigned exponent);

struct PolyDivRem {
  Poly quotient;
  Poly remainder;
};

/// a = b*q + r with deg r < deg b. Throws std::domain_error if b is zero.
PolyDivRem divrem(const Poly& a, const Poly& b);

/// Monic gcd. Throws std::invalid_argument if both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);

/// k-th formal derivative; k = 0 returns the input.
Poly differentiate(const Poly& a, unsigned k = 1);

Rational evaluate(const Poly& a, const Rational& x);

struct LinearFactor {
  Rational root;
  unsigned multiplicity = 0;
  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// leading * prod (x - root)^multiplicity, roots ascending and distinct.
struct LinearFactorization {
  Rational leading{1};
  std::vector<LinearFactor> factors;

  [[nodiscard]] unsigned degree() const;
  [[nodiscard]] Poly expand() const;
};

/// Splits a nonzero polynomial into linear factors over Q using the
/// rational-root test and repeated deflation. Returns nullopt when an
/// irreducible factor of degree >= 2 remains. Throws std::invalid_argument on
/// the zero polynomial.
std::optional<LinearFactorization> rational_linear_factorization(const Poly& a);

/// All positive divisors of a nonzero integer, ascending.
std::vector<mpz_class> positive_divisors(const mpz_class& value);

}  // namespace ssequiv
