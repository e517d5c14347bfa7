#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssequiv/matrix.hpp"
#include "ssequiv/rational.hpp"

namespace ssequiv {

using RatMatrix = Matrix<Rational>;

/// Reduced row echelon form. Pivots are the first nonzero entry in column
/// order; no magnitude pivoting.
struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

RowEchelon row_reduce(const RatMatrix& m);

/// Rank by fraction-free elimination over the integers after clearing row
/// denominators.
std::size_t rank(const RatMatrix& m);

/// Bareiss determinant. Throws std::invalid_argument if not square.
Rational determinant(const RatMatrix& m);

/// Basis of the right nullspace, one vector per free column in column order.
/// Each vector is scaled so that its first nonzero entry is 1.
struct NullspaceBasis {
  std::vector<RatMatrix> vectors;  // column vectors
  [[nodiscard]] std::size_t dim() const noexcept { return vectors.size(); }
};

NullspaceBasis nullspace(const RatMatrix& m);

/// Throws std::domain_error on a singular input, std::invalid_argument if not
/// square.
RatMatrix invert(const RatMatrix& m);

RatMatrix drop_zero_rows(const RatMatrix& m);
RatMatrix vstack(const std::vector<RatMatrix>& blocks, std::size_t cols);

enum class ReshapeStatus { kFound, kNoneExists, kInconclusive };

struct ReshapeOptions {
  /// Largest basis size searched exhaustively; larger bases get a seeded
  /// random search and report Inconclusive on a miss.
  std::size_t max_grid_vars = 8;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct ReshapeResult {
  ReshapeStatus status = ReshapeStatus::kNoneExists;
  std::vector<Rational> coeffs;  // t_1..t_k when found
  RatMatrix v;                   // n x n, reshape of sum t_i * basis_i
};

/// Looks for rational t with reshape(sum t_i v_i, n, n) nonsingular.
///
/// det(sum t_i V_i) has degree at most n in each t_i, so it is the zero
/// polynomial iff it vanishes on {0..n}^k. The grid is scanned in
/// lexicographic order (t_1 most significant) and the first hit is returned,
/// which makes the result independent of evaluation order.
ReshapeResult find_nonsingular_reshape(const NullspaceBasis& basis, std::size_t n, const ReshapeOptions& options = {});

std::string to_string(const RatMatrix& m);

}  // namespace ssequiv
