#include <doctest.h>

#include "ssequiv/engine.hpp"
#include "test_support.hpp"

using namespace ssequiv;
using namespace ssequiv::testing;

namespace {

LinearFactorization factor(const Poly& p) {
  auto f = rational_linear_factorization(p);
  REQUIRE(f);
  return *f;
}

bool same_row_space(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t ra = rank(a);
  return ra == rank(b) && rank(vstack({a, b}, a.cols())) == ra;
}

}  // namespace

TEST_CASE("build_block_matrix") {
  Rng rng(51);
  const Poly b = P({0, -1, 1}) * P({0, -1, 1}) * P({2, 1});
  const PolyMatrix c = random_polymat(rng, 2, 3, 2);
  const RatMatrix zero = build_block_matrix(b * c, factor(b));
  CHECK(zero.rows() == 2 * 5);
  CHECK(zero.cols() == 3);
  CHECK(zero.is_zero());

  CHECK(build_block_matrix(PolyMatrix{{X()}}, factor(P({-1, 1}))) == R({{1}}));

  const PolyMatrix d = kron(adjugate(quartic(-1)), quartic(1).transpose());
  const RatMatrix m = build_block_matrix(d, factor(P({0, 0, 0, 0, 1})));
  CHECK(m.rows() == 16);
  CHECK(m.cols() == 4);
  CHECK(same_row_space(drop_zero_rows(m), R({{0, 0, 1, 0}, {1, 0, 0, 1}, {-2, 2, 0, 2}})));
  // Derivative blocks appear in order 0..k-1: first block is D(0).
  CHECK(m(2, 2) == Rational(1));
}

TEST_CASE("check_representation examples") {
  const Poly b = P({-1, 1}) * P({-1, 1}) * P({3, 1});
  CHECK(check_representation(b * PolyMatrix{{X(), P({2})}, {P({1, 1}), P({})}}, factor(b)));
  CHECK_FALSE(check_representation(PolyMatrix{{P({1})}}, factor(X())));
  // Adjugate against the empty factorization of s_1 = 1.
  const PolyMatrix lifted = lift_family(sample_family_a());
  const LinearFactorization empty = factor(Poly(1));
  CHECK(empty.factors.empty());
  CHECK(check_representation(adjugate(lifted), empty));
}

TEST_CASE("check_representation agrees with divisibility on random pairs") {
  Rng rng(52);
  int positives = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Poly b = random_split_poly(rng, static_cast<int>(uniform(rng, 1, 4)));
    PolyMatrix a = random_polymat(rng, 2, 2, 3);
    if (trial % 2 == 0) a = b * a;
    if (trial % 6 == 0) a(0, 0) += Poly(1);
    const bool expected = divisible_entrywise(a, b);
    positives += expected ? 1 : 0;
    CHECK(check_representation(a, factor(b)) == expected);
  }
  CHECK(positives > 30);
}

TEST_CASE("adjugate vanishes on M[A*, s_{n-1}]") {
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const auto s = random_invariant_factors(rng, n, 6);
    const PolyMatrix a = random_unimodular(rng, n, 2) * diag(s) * random_unimodular(rng, n, 2);
    const SmithDecomposition sm = smith_decompose(a);
    REQUIRE(sm.invariant_factors.size() == n);
    const Poly s_prev = sm.invariant_factors[n - 2];
    CHECK(build_block_matrix(adjugate(a), factor(s_prev)).is_zero());
  }
}

TEST_CASE("build_D") {
  const PolyMatrix a = quartic(1);
  const PolyMatrix b = quartic(-1);
  const SmithDecomposition sb = smith_decompose(b);
  CHECK(build_D(a, b, sb) == kron(adjugate(b), a.transpose()));

  const PolyMatrix one{{X()}};
  CHECK(build_D(one, one, smith_decompose(one)) == one);

  // s_1 = x divides every entry of adj(B) for B = x * I.
  const PolyMatrix scalar = diag({X(), X()});
  const PolyMatrix bx{{X(), P({0, 0, 1})}, {P({}), X()}};
  const SmithDecomposition sx = smith_decompose(bx);
  REQUIRE(sx.invariant_factors == std::vector<Poly>{X(), X()});
  const PolyMatrix d = build_D(scalar, bx, sx);
  CHECK(d == kron(PolyMatrix{{P({1}), P({0, -1})}, {P({}), P({1})}}, scalar.transpose()));

  // Inconsistent Smith data: dividing adj(quartic) by x fails.
  CHECK_THROWS_AS(build_D(a, b, sx), std::domain_error);
}

TEST_CASE("decide_semiscalar on the first worked example") {
  const Decision eq = decide_semiscalar(quartic(1), quartic(-1));
  REQUIRE(eq.equivalent());
  CHECK(eq.witness().v == R({{1, 2}, {0, -1}}));
  CHECK(eq.witness().p == R({{1, 2}, {0, -1}}));
  CHECK(eq.trace.rank == 3u);
  CHECK(eq.trace.nullspace_dim == 1u);

  const Decision ne = decide_semiscalar(quartic(1), quartic(2));
  REQUIRE(std::holds_alternative<outcome::NoWitness>(ne.outcome));
  CHECK(std::get<outcome::NoWitness>(ne.outcome).rank == 4);
  CHECK(std::get<outcome::NoWitness>(ne.outcome).nullspace_dim == 0);
}

TEST_CASE("decide_semiscalar edge cases") {
  const PolyMatrix lifted = lift_family(sample_family_a());
  const Decision self = decide_semiscalar(lifted, lifted);
  REQUIRE(self.equivalent());
  CHECK(verify_witness(lifted, lifted, EquivalenceWitness{RatMatrix::identity(2), RatMatrix::identity(2),
                                                    PolyMatrix::identity(2)}));

  CHECK(std::holds_alternative<outcome::NotEquivalent>(
      decide_semiscalar(diag({Poly(1), P({0, 0, 1})}), diag({X(), X()})).outcome));

  const Decision unsupported = decide_semiscalar(diag({Poly(1), P({1, 0, 1})}), diag({Poly(1), P({1, 0, 1})}));
  CHECK(std::holds_alternative<outcome::Unsupported>(unsupported.outcome));

  // Unimodular pair: s_n = 1, empty system, every nonsingular V is a solution.
  const PolyMatrix u{{P({1}), X()}, {P({}), P({1})}};
  const Decision uni = decide_semiscalar(u, PolyMatrix::identity(2));
  REQUIRE(uni.equivalent());
  CHECK(uni.trace.nullspace_dim == 4u);

  const PolyMatrix scalar{{P({0, 3, 1})}};
  const Decision one = decide_semiscalar(scalar, PolyMatrix{{P({0, 6, 2})}});
  REQUIRE(one.equivalent());
  CHECK(one.witness().q == PolyMatrix{{Poly(Rational(1, 2))}});

  const PolyMatrix singular{{X(), X()}, {P({1, 0, 1}), P({1, 0, 1})}};
  CHECK_THROWS_AS(decide_semiscalar(singular, singular), SingularInputError);
  CHECK_THROWS_AS(decide_semiscalar(quartic(1), PolyMatrix::identity(3)), std::invalid_argument);
  CHECK_THROWS_AS(decide_semiscalar(PolyMatrix(2, 3), PolyMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("recover_witness") {
  const PolyMatrix a = quartic(1);
  const PolyMatrix b = quartic(-1);
  const EquivalenceWitness w = recover_witness(a, b, R({{1, 2}, {0, -1}}), smith_decompose(b));
  CHECK(w.q == PolyMatrix{{P({1, 2, 2}), P({0, 0, 0, 0, 2})}, {P({-2}), P({-1, 2, -2})}});
  CHECK(is_unimodular(w.q));

  const EquivalenceWitness id = recover_witness(a, a, RatMatrix::identity(2), smith_decompose(a));
  CHECK(id.q == PolyMatrix::identity(2));

  // P*A*Q = B in the example; read as B = P*A*Q with V = P^-1.
  const EquivalenceWitness w_known = recover_witness(known_b(), known_a(), invert(known_p()), smith_decompose(known_a()));
  CHECK(w_known.q == known_q());
  CHECK(w_known.p == known_p());

  CHECK_THROWS_AS(recover_witness(a, b, RatMatrix::identity(2), smith_decompose(b)), std::domain_error);
}

TEST_CASE("verify_witness") {
  const EquivalenceWitness w{invert(known_p()), known_p(), known_q()};
  CHECK(verify_witness(known_b(), known_a(), w));
  const EquivalenceWitness id{RatMatrix::identity(2), RatMatrix::identity(2), PolyMatrix::identity(2)};
  CHECK(verify_witness(known_a(), known_a(), id));
  EquivalenceWitness bad = w;
  bad.q(1, 0) += Poly(1);
  CHECK_FALSE(verify_witness(known_b(), known_a(), bad));
  EquivalenceWitness bad_p = w;
  bad_p.p(0, 0) += Rational(1);
  CHECK_FALSE(verify_witness(known_b(), known_a(), bad_p));
  CHECK_FALSE(verify_witness(known_b(), known_a(), EquivalenceWitness{}));
}

TEST_CASE("decide_ps") {
  const Decision ps = decide_ps(quartic(1).transpose(), quartic(-1).transpose());
  REQUIRE(ps.equivalent());
  CHECK(ps.relation == Relation::kPs);
  CHECK(verify_ps_witness(quartic(1).transpose(), quartic(-1).transpose(), ps.witness()));
  CHECK(decide_ps(known_a(), known_a()).equivalent());
  CHECK(std::holds_alternative<outcome::NoWitness>(decide_ps(quartic(1).transpose(), quartic(2).transpose()).outcome));
}

TEST_CASE("PS and semi-scalar decisions agree through transposition") {
  Rng rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const RoundtripInstance inst = random_roundtrip_instance(rng, n);
    // Mix in pairs that are only equivalent.
    const PolyMatrix a = trial % 2 == 0 ? inst.a : random_unimodular(rng, n, 2) * inst.b * inst.q;
    const Decision ps = decide_ps(a, inst.b);
    const Decision ss = decide_semiscalar(a.transpose(), inst.b.transpose());
    CHECK(ps.outcome.index() == ss.outcome.index());
    if (ps.equivalent()) {
      CHECK(verify_ps_witness(a, inst.b, ps.witness()));
      CHECK(ps.witness().v == ss.witness().v.transpose());
    }
  }
}

TEST_CASE("lift_family") {
  CHECK(lift_family(MatrixFamily{2, {RatMatrix(2, 2)}}) == X() * PolyMatrix::identity(2));
  CHECK(lift_family(sample_family_a()) == PolyMatrix{{P({1, -3, 1}), P({1})}, {P({1, -4}), P({1, 1, 1})}});
  CHECK(lift_family(sample_family_b()) == PolyMatrix{{P({0, 1, 1}), P({})}, {P({1, -4}), P({2, -3, 1})}});
  CHECK_THROWS_AS(lift_family(MatrixFamily{2, {}}), std::invalid_argument);
  CHECK_THROWS_AS(lift_family(MatrixFamily{2, {RatMatrix(3, 3)}}), std::invalid_argument);
}

TEST_CASE("decide_family_similarity") {
  const Decision d = decide_family_similarity(sample_family_a(), sample_family_b());
  REQUIRE(d.equivalent());
  CHECK(d.witness().v == R({{1, -1}, {0, 1}}));
  CHECK(verify_similarity(sample_family_a(), sample_family_b(), d.witness().v));

  const Decision same = decide_family_similarity(sample_family_a(), sample_family_a());
  REQUIRE(same.equivalent());
  CHECK(verify_similarity(sample_family_a(), sample_family_a(), RatMatrix::identity(2)));

  const Decision nil = decide_family_similarity(MatrixFamily{2, {R({{0, 1}, {0, 0}})}}, MatrixFamily{2, {RatMatrix(2, 2)}});
  CHECK_FALSE(nil.equivalent());
  CHECK(std::holds_alternative<outcome::NotEquivalent>(nil.outcome));

  CHECK_THROWS_AS(decide_family_similarity(sample_family_a(), MatrixFamily{2, {RatMatrix(2, 2)}}), std::invalid_argument);
}

TEST_CASE("random similar families are recognised") {
  Rng rng(55);
  for (int trial = 0; trial < 15; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    MatrixFamily fb{n, {random_ratmat(rng, n, n, 2)}};
    // Split eigenvalues keep the last invariant factor rational.
    if (rational_linear_factorization(smith_decompose(lift_family(fb)).invariant_factors.back()) == std::nullopt) continue;
    const RatMatrix t = random_gl(rng, n);
    MatrixFamily fa{n, {invert(t) * fb.members[0] * t}};
    const Decision d = decide_family_similarity(fa, fb);
    REQUIRE(d.equivalent());
    CHECK(verify_similarity(fa, fb, d.witness().v));
  }
}

TEST_CASE("soundness roundtrip, symmetry and option invariance") {
  Rng rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const RoundtripInstance inst = random_roundtrip_instance(rng, n);
    const Decision d = decide_semiscalar(inst.a, inst.b);
    REQUIRE(d.equivalent());
    CHECK(verify_witness(inst.a, inst.b, d.witness()));
    CHECK(are_equivalent(inst.a, inst.b));
    CHECK(decide_semiscalar(inst.b, inst.a).equivalent());
    // Inverted witness: B = P^-1 * A * Q^-1.
    const EquivalenceWitness& w = d.witness();
    const PolyMatrix qinv = Poly(determinant(w.q).leading().inverse()) * adjugate(w.q);
    CHECK(verify_witness(inst.b, inst.a, EquivalenceWitness{w.p, w.v, qinv}));

    DecideOptions raw;
    raw.normalize = false;
    raw.prune_zero_rows = false;
    const Decision r = decide_semiscalar(inst.a, inst.b, raw);
    REQUIRE(r.equivalent());
    CHECK(r.trace.rank == d.trace.rank);
    CHECK(r.trace.nullspace_dim == d.trace.nullspace_dim);
    CHECK(verify_witness(inst.a, inst.b, r.witness()));
  }
}

TEST_CASE("normalization makes the first nonzero entry of V one") {
  DecideOptions raw;
  raw.normalize = false;
  const Decision r = decide_semiscalar(quartic(2), quartic(-2), raw);
  const Decision n = decide_semiscalar(quartic(2), quartic(-2));
  REQUIRE(r.equivalent());
  REQUIRE(n.equivalent());
  CHECK(n.witness().v == R({{1, Rational(1, 2)}, {0, -1}}));
  const Rational scale = r.witness().v(0, 0);
  CHECK(r.witness().v == scale * n.witness().v);
}
