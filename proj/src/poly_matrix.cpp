#include "ssequiv/poly_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ssequiv {

int degree(const PolyMatrix& m) {
  int d = -1;
  for (const auto& p : m.entries()) d = std::max(d, p.degree());
  return d;
}

PolyMatrix to_poly_matrix(const RatMatrix& m) {
  std::vector<Poly> entries;
  entries.reserve(m.entries().size());
  for (const auto& x : m.entries()) entries.emplace_back(x);
  return PolyMatrix(m.rows(), m.cols(), std::move(entries));
}

namespace {

Poly cofactor_det(const PolyMatrix& m) {
  switch (m.rows()) {
    case 0:
      return Poly(1);
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
}

Poly bareiss_det(PolyMatrix a) {
  const std::size_t n = a.rows();
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = divrem(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev).quotient;
      }
      a(i, k) = Poly();
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

PolyMatrix minor_matrix(const PolyMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = m.rows();
  PolyMatrix out(n - 1, n - 1);
  for (std::size_t i = 0, r = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, c = 0; j < n; ++j) {
      if (j == skip_col) continue;
      out(r, c++) = m(i, j);
    }
    ++r;
  }
  return out;
}

}  // namespace

Poly determinant(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square polynomial matrix");
  return m.rows() <= 3 ? cofactor_det(m) : bareiss_det(m);
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate of a non-square polynomial matrix");
  const std::size_t n = m.rows();
  if (n == 1) return PolyMatrix::identity(1);
  PolyMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Poly c = determinant(minor_matrix(m, i, j));
      adj(j, i) = (i + j) % 2 == 0 ? c : -c;
    }
  }
  return adj;
}

PolyMatrix derivative(const PolyMatrix& m, unsigned k) {
  PolyMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = differentiate(m(i, j), k);
  }
  return out;
}

RatMatrix evaluate(const PolyMatrix& m, const Rational& x) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m(i, j), x);
  }
  return out;
}

PolyMatrixDivRem divrem(const PolyMatrix& m, const Poly& modulus) {
  if (!modulus.is_monic() || modulus.degree() < 1) {
    throw std::invalid_argument("matrix division modulus must be monic of degree >= 1");
  }
  PolyMatrixDivRem out{PolyMatrix(m.rows(), m.cols()), PolyMatrix(m.rows(), m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto [q, r] = divrem(m(i, j), modulus);
      out.quotient(i, j) = std::move(q);
      out.remainder(i, j) = std::move(r);
    }
  }
  return out;
}

PolyMatrix divide_exact(const PolyMatrix& m, const Poly& divisor) {
  PolyMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto [q, r] = divrem(m(i, j), divisor);
      if (!r.is_zero()) throw std::domain_error("inexact division of matrix entry by " + divisor.str());
      out(i, j) = std::move(q);
    }
  }
  return out;
}

bool is_unimodular(const PolyMatrix& q) {
  const Poly d = determinant(q);
  return d.degree() == 0;
}

std::string to_string(const PolyMatrix& m, std::string_view var) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : ", [");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j == 0 ? "" : ", ") << m(i, j).str(var);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace ssequiv
