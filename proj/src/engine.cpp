#include "ssequiv/engine.hpp"

#include <stdexcept>

namespace ssequiv {

namespace {

void require_square_pair(const PolyMatrix& a, const PolyMatrix& b) {
  if (!a.is_square() || !b.is_square()) throw std::invalid_argument("decision requires square matrices");
  if (a.rows() != b.rows()) throw std::invalid_argument("decision requires matrices of the same size");
  if (a.rows() == 0) throw std::invalid_argument("decision requires n >= 1");
}

void require_nonsingular(const PolyMatrix& m, const char* name) {
  if (determinant(m).is_zero()) {
    throw SingularInputError(std::string("matrix ") + name +
                             " is singular (det = 0); only nonsingular polynomial matrices can be decided");
  }
}

RatMatrix normalized(RatMatrix v) {
  for (const auto& x : v.entries()) {
    if (x.is_zero()) continue;
    const Rational inv = x.inverse();
    return inv * std::move(v);
  }
  return v;
}

}  // namespace

RatMatrix build_block_matrix(const PolyMatrix& a, const LinearFactorization& f) {
  std::vector<RatMatrix> blocks;
  for (const auto& factor : f.factors) {
    PolyMatrix deriv = a;
    for (unsigned d = 0; d < factor.multiplicity; ++d) {
      if (d > 0) deriv = derivative(deriv);
      blocks.push_back(evaluate(deriv, factor.root));
    }
  }
  return vstack(blocks, a.cols());
}

bool check_representation(const PolyMatrix& a, const LinearFactorization& f) {
  return build_block_matrix(a, f).is_zero();
}

PolyMatrix build_D(const PolyMatrix& a, const PolyMatrix& b, const SmithDecomposition& smith) {
  require_square_pair(a, b);
  const std::size_t n = a.rows();
  const Poly d = cumulative_product(smith, n - 1);
  const PolyMatrix c = divide_exact(adjugate(b), d);
  return kron(c, a.transpose());
}

RatMatrix build_system(const PolyMatrix& a, const PolyMatrix& b, const SmithDecomposition& smith,
                       const LinearFactorization& top) {
  return build_block_matrix(build_D(a, b, smith), top);
}

EquivalenceWitness recover_witness(const PolyMatrix& a, const PolyMatrix& b, const RatMatrix& v,
                                   const SmithDecomposition& smith) {
  require_square_pair(a, b);
  const std::size_t n = a.rows();
  if (v.rows() != n || v.cols() != n) throw std::invalid_argument("witness V has the wrong shape");
  if (smith.invariant_factors.size() != n) throw std::invalid_argument("Smith form of a singular matrix");
  const Poly d = cumulative_product(smith, n - 1);
  const Poly& top = smith.invariant_factors.back();
  const PolyMatrix c = divide_exact(adjugate(b), d);
  const PolyMatrix cva = c * to_poly_matrix(v) * a;

  PolyMatrix q = cva;
  if (top.degree() >= 1) {
    auto [quot, rem] = divrem(cva, top);
    if (!rem.is_zero()) throw std::domain_error("C*V*A is not divisible by the last invariant factor");
    q = std::move(quot);
  }
  const Rational b0 = determinant(b).leading();
  q = Poly(b0.inverse()) * std::move(q);
  if (!is_unimodular(q)) throw std::domain_error("recovered Q is not unimodular");
  return {v, invert(v), std::move(q)};
}

bool verify_witness(const PolyMatrix& a, const PolyMatrix& b, const EquivalenceWitness& w) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.rows() != n || b.cols() != n) return false;
  if (w.v.rows() != n || w.v.cols() != n || w.p.rows() != n || w.p.cols() != n) return false;
  if (w.q.rows() != n || w.q.cols() != n) return false;
  if (w.p * w.v != RatMatrix::identity(n)) return false;
  if (to_poly_matrix(w.v) * a != b * w.q) return false;
  return is_unimodular(w.q);
}

bool verify_ps_witness(const PolyMatrix& a, const PolyMatrix& b, const EquivalenceWitness& w) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.rows() != n || b.cols() != n) return false;
  if (w.v.rows() != n || w.v.cols() != n || w.p.rows() != n || w.p.cols() != n) return false;
  if (w.q.rows() != n || w.q.cols() != n) return false;
  if (w.v * w.p != RatMatrix::identity(n)) return false;
  if (a * to_poly_matrix(w.v) != w.q * b) return false;
  return is_unimodular(w.q);
}

bool verify(Relation relation, const PolyMatrix& a, const PolyMatrix& b, const EquivalenceWitness& w) {
  return relation == Relation::kSemiScalar ? verify_witness(a, b, w) : verify_ps_witness(a, b, w);
}

Decision decide_semiscalar(const PolyMatrix& a, const PolyMatrix& b, const DecideOptions& options) {
  require_square_pair(a, b);
  require_nonsingular(a, "A");
  require_nonsingular(b, "B");
  const std::size_t n = a.rows();

  Decision out;
  const SmithDecomposition sa = smith_decompose(a);
  const SmithDecomposition sb = smith_decompose(b);
  out.trace.invariant_factors_a = sa.invariant_factors;
  out.trace.invariant_factors_b = sb.invariant_factors;
  if (sa.invariant_factors != sb.invariant_factors) {
    out.outcome = outcome::NotEquivalent{};
    return out;
  }

  const Poly& top = sb.invariant_factors.back();
  auto factored = rational_linear_factorization(top);
  if (!factored) {
    out.outcome = outcome::Unsupported{"last invariant factor " + top.str() + " does not split into linear factors over Q"};
    return out;
  }
  out.trace.top_factorization = factored;

  RatMatrix system = build_system(a, b, sb, *factored);
  if (options.prune_zero_rows) system = drop_zero_rows(system);
  out.trace.system_rows = system.rows();
  const std::size_t r = rank(system);
  out.trace.rank = r;
  if (r == n * n) {
    out.trace.nullspace_dim = 0;
    out.outcome = outcome::NoWitness{r, 0};
    return out;
  }

  const NullspaceBasis basis = nullspace(system);
  out.trace.nullspace_dim = basis.dim();
  ReshapeResult found = find_nonsingular_reshape(basis, n, options.reshape);
  switch (found.status) {
    case ReshapeStatus::kNoneExists:
      out.outcome = outcome::NoWitness{r, basis.dim()};
      return out;
    case ReshapeStatus::kInconclusive:
      out.outcome = outcome::Inconclusive{"no nonsingular matrix found by random search over a " +
                                          std::to_string(basis.dim()) + "-dimensional solution space"};
      return out;
    case ReshapeStatus::kFound:
      break;
  }
  out.trace.combination = found.coeffs;
  const RatMatrix v = options.normalize ? normalized(std::move(found.v)) : std::move(found.v);
  EquivalenceWitness w = recover_witness(a, b, v, sb);
  if (!verify_witness(a, b, w)) throw std::logic_error("recovered witness failed verification");
  out.outcome = outcome::Equivalent{std::move(w)};
  return out;
}

Decision decide_ps(const PolyMatrix& a, const PolyMatrix& b, const DecideOptions& options) {
  require_square_pair(a, b);
  Decision out = decide_semiscalar(a.transpose(), b.transpose(), options);
  out.relation = Relation::kPs;
  if (auto* eq = std::get_if<outcome::Equivalent>(&out.outcome)) {
    EquivalenceWitness& w = eq->witness;
    w = {w.v.transpose(), w.p.transpose(), w.q.transpose()};
    if (!verify_ps_witness(a, b, w)) throw std::logic_error("transposed witness failed verification");
  }
  return out;
}

PolyMatrix lift_family(const MatrixFamily& f) {
  if (f.members.empty()) throw std::invalid_argument("empty matrix family");
  if (f.n == 0) throw std::invalid_argument("matrix family of size 0");
  for (const auto& m : f.members) {
    if (m.rows() != f.n || m.cols() != f.n) throw std::invalid_argument("family member has the wrong shape");
  }
  const std::size_t r = f.members.size();
  PolyMatrix out(f.n, f.n);
  for (std::size_t i = 0; i < f.n; ++i) {
    for (std::size_t j = 0; j < f.n; ++j) {
      std::vector<Rational> coeffs(r + 1);
      if (i == j) coeffs[r] = Rational(1);
      for (std::size_t k = 1; k <= r; ++k) coeffs[r - k] = f.members[k - 1](i, j);
      out(i, j) = Poly(std::move(coeffs));
    }
  }
  return out;
}

bool verify_similarity(const MatrixFamily& fa, const MatrixFamily& fb, const RatMatrix& v) {
  if (fa.members.size() != fb.members.size()) return false;
  if (determinant(v).is_zero()) return false;
  const RatMatrix vinv = invert(v);
  for (std::size_t i = 0; i < fa.members.size(); ++i) {
    if (fa.members[i] != vinv * fb.members[i] * v) return false;
  }
  return true;
}

Decision decide_family_similarity(const MatrixFamily& fa, const MatrixFamily& fb, const DecideOptions& options) {
  if (fa.n != fb.n || fa.members.size() != fb.members.size()) {
    throw std::invalid_argument("families differ in matrix size or length");
  }
  Decision out = decide_semiscalar(lift_family(fa), lift_family(fb), options);
  if (out.equivalent() && !verify_similarity(fa, fb, out.witness().v)) {
    throw std::logic_error("similarity transform failed verification");
  }
  return out;
}

}  // namespace ssequiv
