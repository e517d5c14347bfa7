#pragma once

#include <string>

#include "ssequiv/matrix.hpp"
#include "ssequiv/poly.hpp"
#include "ssequiv/rat_matrix.hpp"

namespace ssequiv {

using PolyMatrix = Matrix<Poly>;

/// Max entry degree; -1 stands in for the zero matrix.
int degree(const PolyMatrix& m);

PolyMatrix to_poly_matrix(const RatMatrix& m);

/// Cofactor expansion for n <= 3, fraction-free Bareiss elimination over Q[x]
/// otherwise. Throws std::invalid_argument if not square.
Poly determinant(const PolyMatrix& m);

/// Classical adjoint, with adj([[a]]) = [[1]] so that m*adj(m) = det(m)*I.
PolyMatrix adjugate(const PolyMatrix& m);

/// Elementwise k-th derivative.
PolyMatrix derivative(const PolyMatrix& m, unsigned k = 1);

RatMatrix evaluate(const PolyMatrix& m, const Rational& x);

struct PolyMatrixDivRem {
  PolyMatrix quotient;
  PolyMatrix remainder;
};

/// m = modulus*quotient + remainder, every remainder entry of degree below
/// deg(modulus). The modulus must be monic of degree >= 1.
PolyMatrixDivRem divrem(const PolyMatrix& m, const Poly& modulus);

/// Entrywise exact division; throws std::domain_error on a nonzero remainder.
PolyMatrix divide_exact(const PolyMatrix& m, const Poly& divisor);

/// det is a nonzero constant.
bool is_unimodular(const PolyMatrix& q);

std::string to_string(const PolyMatrix& m, std::string_view var = "λ");

}  // namespace ssequiv
