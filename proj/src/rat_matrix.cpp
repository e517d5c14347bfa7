#include "ssequiv/rat_matrix.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace ssequiv {

namespace {

using IntRows = std::vector<std::vector<mpz_class>>;

// Each row multiplied by the lcm of its denominators.
IntRows integer_rows(const RatMatrix& m) {
  IntRows rows(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& q = m(i, j).value();
      rows[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  return rows;
}

// Fraction-free forward elimination in place. Returns the rank; `swaps`
// counts row exchanges for the determinant sign.
std::size_t bareiss(IntRows& a, std::size_t cols, std::size_t& swaps) {
  const std::size_t rows = a.size();
  mpz_class prev = 1;
  std::size_t r = 0;
  swaps = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      ++swaps;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace

RowEchelon row_reduce(const RatMatrix& m) {
  RowEchelon out{m, {}};
  RatMatrix& a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    }
    const Rational inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

std::size_t rank(const RatMatrix& m) {
  IntRows a = integer_rows(m);
  std::size_t swaps = 0;
  return bareiss(a, m.cols(), swaps);
}

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
    scale *= l;
  }
  IntRows a = integer_rows(m);
  std::size_t swaps = 0;
  if (bareiss(a, n, swaps) < n) return Rational();
  mpz_class det = a[n - 1][n - 1];
  if (swaps % 2 == 1) det = -det;
  return Rational(det, scale);
}

NullspaceBasis nullspace(const RatMatrix& m) {
  const RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  NullspaceBasis basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatMatrix v(m.cols(), 1);
    v(f, 0) = Rational(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v(e.pivot_cols[r], 0) = -e.reduced(r, f);
    std::size_t lead = 0;
    while (v(lead, 0).is_zero()) ++lead;
    const Rational inv = v(lead, 0).inverse();
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, 0) *= inv;
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

RatMatrix invert(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Rational(1);
  }
  const RowEchelon e = row_reduce(aug);
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  }
  return inv;
}

RatMatrix drop_zero_rows(const RatMatrix& m) {
  std::vector<Rational> kept;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols() && zero; ++j) zero = m(i, j).is_zero();
    if (zero) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) kept.push_back(m(i, j));
    ++rows;
  }
  return RatMatrix(rows, m.cols(), std::move(kept));
}

RatMatrix vstack(const std::vector<RatMatrix>& blocks, std::size_t cols) {
  std::vector<Rational> entries;
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    entries.insert(entries.end(), b.entries().begin(), b.entries().end());
    rows += b.rows();
  }
  return RatMatrix(rows, cols, std::move(entries));
}

namespace {

RatMatrix combine(const std::vector<RatMatrix>& mats, const std::vector<Rational>& t, std::size_t n) {
  RatMatrix v(n, n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (t[i].is_zero()) continue;
    v += t[i] * mats[i];
  }
  return v;
}

}  // namespace

ReshapeResult find_nonsingular_reshape(const NullspaceBasis& basis, std::size_t n, const ReshapeOptions& options) {
  std::vector<RatMatrix> mats;
  mats.reserve(basis.dim());
  for (const auto& vec : basis.vectors) {
    if (vec.cols() != 1 || vec.rows() != n * n) {
      throw std::invalid_argument("basis vector length " + std::to_string(vec.rows()) + " is not n^2 = " +
                                  std::to_string(n * n));
    }
    mats.push_back(reshape(vec, n, n));
  }
  const std::size_t k = mats.size();
  ReshapeResult result;

  if (k > options.max_grid_vars) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> coeff(0, static_cast<long>(16 * n));
    std::vector<Rational> t(k);
    for (std::size_t trial = 0; trial < 64 * n; ++trial) {
      for (auto& x : t) x = Rational(coeff(rng));
      RatMatrix v = combine(mats, t, n);
      if (!determinant(v).is_zero()) {
        result.status = ReshapeStatus::kFound;
        result.coeffs = t;
        result.v = std::move(v);
        return result;
      }
    }
    result.status = ReshapeStatus::kInconclusive;
    return result;
  }

  // Odometer over {0..n}^k, last coordinate fastest.
  std::vector<long> idx(k, 0);
  std::vector<Rational> t(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) t[i] = Rational(idx[i]);
    RatMatrix v = combine(mats, t, n);
    if (!determinant(v).is_zero()) {
      result.status = ReshapeStatus::kFound;
      result.coeffs = t;
      result.v = std::move(v);
      return result;
    }
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == static_cast<long>(n)) idx[--pos] = 0;
    if (pos == 0) break;
    ++idx[pos - 1];
  }
  result.status = ReshapeStatus::kNoneExists;
  return result;
}

std::string to_string(const RatMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : ", [");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j == 0 ? "" : ", ") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace ssequiv
