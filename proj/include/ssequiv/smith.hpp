#pragma once

#include <vector>

#include "ssequiv/poly_matrix.hpp"

namespace ssequiv {

/// u * a * w == s with u, w unimodular and s = diag(s_1, ..., s_r, 0, ...),
/// each s_i monic and dividing s_{i+1}.
struct SmithDecomposition {
  PolyMatrix u;
  PolyMatrix s;
  PolyMatrix w;
  std::vector<Poly> invariant_factors;  // the nonzero diagonal of s
};

SmithDecomposition smith_decompose(const PolyMatrix& a);

/// Same shape and identical invariant factors. Throws std::invalid_argument
/// on a shape mismatch.
bool are_equivalent(const PolyMatrix& a, const PolyMatrix& b);

/// s_1 * ... * s_upto; upto = 0 gives 1. Throws std::out_of_range past the
/// diagonal.
Poly cumulative_product(const SmithDecomposition& s, std::size_t upto);

}  // namespace ssequiv
