#include "ssequiv/smith.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace ssequiv {

namespace {

// Elementary operations are applied to the working matrix and mirrored onto
// the accumulated transform, so u*a*w == s holds after every step.
struct Reducer {
  PolyMatrix s;
  PolyMatrix u;
  PolyMatrix w;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s(a, j), s(b, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s(i, a), s(i, b));
    for (std::size_t i = 0; i < w.rows(); ++i) std::swap(w(i, a), w(i, b));
  }
  // row_dst += f * row_src
  void add_row(std::size_t dst, std::size_t src, const Poly& f) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (!s(src, j).is_zero()) s(dst, j) += f * s(src, j);
    }
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (!u(src, j).is_zero()) u(dst, j) += f * u(src, j);
    }
  }
  // col_dst += f * col_src
  void add_col(std::size_t dst, std::size_t src, const Poly& f) {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      if (!s(i, src).is_zero()) s(i, dst) += s(i, src) * f;
    }
    for (std::size_t i = 0; i < w.rows(); ++i) {
      if (!w(i, src).is_zero()) w(i, dst) += w(i, src) * f;
    }
  }
  void scale_row(std::size_t r, const Rational& c) {
    const Poly f(c);
    for (std::size_t j = 0; j < s.cols(); ++j) s(r, j) *= f;
    for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) *= f;
  }

  // Smallest-degree nonzero entry of the trailing block, row-major first.
  [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> min_degree_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    int best_deg = 0;
    for (std::size_t i = t; i < s.rows(); ++i) {
      for (std::size_t j = t; j < s.cols(); ++j) {
        const int d = s(i, j).degree();
        if (d < 0) continue;
        if (!best || d < best_deg) {
          best = {i, j};
          best_deg = d;
        }
      }
    }
    return best;
  }

  // Clears row t and column t except for the pivot. Returns false if a
  // nonzero remainder was left behind.
  bool eliminate(std::size_t t) {
    bool clean = true;
    for (std::size_t i = t + 1; i < s.rows(); ++i) {
      if (s(i, t).is_zero()) continue;
      auto [q, r] = divrem(s(i, t), s(t, t));
      add_row(i, t, -q);
      clean = clean && r.is_zero();
    }
    for (std::size_t j = t + 1; j < s.cols(); ++j) {
      if (s(t, j).is_zero()) continue;
      auto [q, r] = divrem(s(t, j), s(t, t));
      add_col(j, t, -q);
      clean = clean && r.is_zero();
    }
    return clean;
  }

  // A trailing-block row whose entries the pivot does not divide.
  [[nodiscard]] std::optional<std::size_t> divisibility_violation(std::size_t t) const {
    for (std::size_t i = t + 1; i < s.rows(); ++i) {
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (!s(i, j).is_zero() && !divrem(s(i, j), s(t, t)).remainder.is_zero()) return i;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

SmithDecomposition smith_decompose(const PolyMatrix& a) {
  Reducer red{a, PolyMatrix::identity(a.rows()), PolyMatrix::identity(a.cols())};
  const std::size_t diag = std::min(a.rows(), a.cols());
  std::vector<Poly> factors;
  for (std::size_t t = 0; t < diag; ++t) {
    bool exhausted = false;
    for (;;) {
      const auto pivot = red.min_degree_entry(t);
      if (!pivot) {
        exhausted = true;
        break;
      }
      red.swap_rows(t, pivot->first);
      red.swap_cols(t, pivot->second);
      if (!red.eliminate(t)) continue;
      if (const auto bad = red.divisibility_violation(t)) {
        red.add_row(t, *bad, Poly(1));
        continue;
      }
      break;
    }
    if (exhausted) break;
    red.scale_row(t, red.s(t, t).leading().inverse());
    factors.push_back(red.s(t, t));
  }
  return {std::move(red.u), std::move(red.s), std::move(red.w), std::move(factors)};
}

bool are_equivalent(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("equivalence test on matrices of different shapes");
  }
  return smith_decompose(a).invariant_factors == smith_decompose(b).invariant_factors;
}

Poly cumulative_product(const SmithDecomposition& s, std::size_t upto) {
  if (upto > std::min(s.s.rows(), s.s.cols())) throw std::out_of_range("cumulative product index past the diagonal");
  Poly out(1);
  for (std::size_t i = 0; i < upto; ++i) out *= s.s(i, i);
  return out;
}

}  // namespace ssequiv
