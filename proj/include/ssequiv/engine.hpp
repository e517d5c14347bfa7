#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ssequiv/poly_matrix.hpp"
#include "ssequiv/rat_matrix.hpp"
#include "ssequiv/smith.hpp"

namespace ssequiv {

/// Raised when a decision is requested for a matrix with zero determinant.
/// The criterion only covers nonsingular matrices.
class SingularInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Semi-scalar form: V*A == B*Q, P == V^-1, i.e. A == P*B*Q.
/// PS form: A*V == Q*B, P == V^-1, i.e. A == Q*B*P.
enum class Relation { kSemiScalar, kPs };

struct EquivalenceWitness {
  RatMatrix v;
  RatMatrix p;
  PolyMatrix q;
};

namespace outcome {
struct NotEquivalent {};
struct NoWitness {
  std::size_t rank = 0;
  std::size_t nullspace_dim = 0;
};
struct Equivalent {
  EquivalenceWitness witness;
};
struct Unsupported {
  std::string reason;
};
struct Inconclusive {
  std::string reason;
};
}  // namespace outcome

using DecisionOutcome = std::variant<outcome::NotEquivalent, outcome::NoWitness, outcome::Equivalent,
                                     outcome::Unsupported, outcome::Inconclusive>;

/// Intermediate quantities recorded along the way, for reporting.
struct DecisionTrace {
  std::vector<Poly> invariant_factors_a;
  std::vector<Poly> invariant_factors_b;
  std::optional<LinearFactorization> top_factorization;
  std::optional<std::size_t> system_rows;  // after zero-row pruning
  std::optional<std::size_t> rank;
  std::optional<std::size_t> nullspace_dim;
  std::vector<Rational> combination;  // grid coefficients of the chosen V
};

struct Decision {
  Relation relation = Relation::kSemiScalar;
  DecisionOutcome outcome;
  DecisionTrace trace;

  [[nodiscard]] bool equivalent() const { return std::holds_alternative<outcome::Equivalent>(outcome); }
  [[nodiscard]] const EquivalenceWitness& witness() const { return std::get<outcome::Equivalent>(outcome).witness; }
};

struct DecideOptions {
  ReshapeOptions reshape;
  /// Scale V so its first nonzero entry (row-major) is 1.
  bool normalize = true;
  bool prune_zero_rows = true;
};

/// Stacks a^(d)(root) for d = 0..mult-1, one block per factor in order.
RatMatrix build_block_matrix(const PolyMatrix& a, const LinearFactorization& f);

/// True iff every entry of a is divisible by the (monic) product of f.
bool check_representation(const PolyMatrix& a, const LinearFactorization& f);

/// (adj(b) / (s_1...s_{n-1})) kron transpose(a). `smith` is the Smith
/// decomposition of b. Throws std::domain_error if the division is inexact.
PolyMatrix build_D(const PolyMatrix& a, const PolyMatrix& b, const SmithDecomposition& smith);

/// The coefficient system M[D, s_n] for an equivalent pair, before pruning.
RatMatrix build_system(const PolyMatrix& a, const PolyMatrix& b, const SmithDecomposition& smith,
                       const LinearFactorization& top);

/// Decides A == P*B*Q(x) with P constant invertible and Q unimodular.
/// Throws SingularInputError for det == 0 and std::invalid_argument for
/// non-square or mismatched inputs.
Decision decide_semiscalar(const PolyMatrix& a, const PolyMatrix& b, const DecideOptions& options = {});

/// Decides A == P(x)*B*Q with P unimodular and Q constant, via transposes.
Decision decide_ps(const PolyMatrix& a, const PolyMatrix& b, const DecideOptions& options = {});

/// Q = (C*V*A / s_n) / b0 with C = adj(b)/(s_1...s_{n-1}) and b0 the leading
/// coefficient of det(b). Throws std::domain_error if the quotient is not
/// exact, Q is not unimodular or V is singular.
EquivalenceWitness recover_witness(const PolyMatrix& a, const PolyMatrix& b, const RatMatrix& v,
                                   const SmithDecomposition& smith);

bool verify_witness(const PolyMatrix& a, const PolyMatrix& b, const EquivalenceWitness& w);
bool verify_ps_witness(const PolyMatrix& a, const PolyMatrix& b, const EquivalenceWitness& w);
bool verify(Relation relation, const PolyMatrix& a, const PolyMatrix& b, const EquivalenceWitness& w);

struct MatrixFamily {
  std::size_t n = 0;
  std::vector<RatMatrix> members;
};

/// I*x^r + A_1*x^(r-1) + ... + A_r. Throws std::invalid_argument on an empty
/// or ill-shaped family.
PolyMatrix lift_family(const MatrixFamily& f);

/// A_i == V^-1 * B_i * V for every i.
bool verify_similarity(const MatrixFamily& fa, const MatrixFamily& fb, const RatMatrix& v);

/// Simultaneous similarity through the lifted monic polynomials. On success
/// the witness V conjugates fb onto fa.
Decision decide_family_similarity(const MatrixFamily& fa, const MatrixFamily& fb, const DecideOptions& options = {});

}  // namespace ssequiv
