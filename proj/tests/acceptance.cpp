// One PASS/FAIL line per acceptance criterion; exit status is the failure count.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <type_traits>

#include "ssequiv/engine.hpp"
#include "ssequiv/smith.hpp"
#include "test_support.hpp"

using namespace ssequiv;
using namespace ssequiv::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(SSEQUIV_CLI) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string data(const std::string& name) { return (std::filesystem::path(SSEQUIV_TEST_DATA) / name).string(); }

template <typename T>
bool proportional(const Matrix<T>& a, const Matrix<T>& b) {
  // a == c*b for a nonzero rational c.
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::optional<Rational> c;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const T& x = a.entries()[i];
    const T& y = b.entries()[i];
    if (y == T{}) {
      if (!(x == T{})) return false;
      continue;
    }
    if (!c) {
      if constexpr (std::is_same_v<T, Poly>) {
        c = x.leading() / y.leading();
      } else {
        c = x / y;
      }
      if (c->is_zero()) return false;
    }
    if (!(x == T(*c) * y)) return false;
  }
  return c.has_value();
}

bool criterion1(std::string& note) {
  double worst = 0;
  for (long a : {1L, 2L, 3L}) {
    const auto t0 = Clock::now();
    const Decision d = decide_semiscalar(quartic(a), quartic(-a));
    worst = std::max(worst, seconds_since(t0));
    if (!d.equivalent() || !verify_witness(quartic(a), quartic(-a), d.witness())) return false;
    const RatMatrix expected = R({{1, Rational(2, a * a)}, {0, -1}});
    if (!proportional(d.witness().v, expected)) return false;
  }
  for (auto [a, b] : {std::pair{1L, 2L}, {2L, 1L}, {1L, 0L}, {2L, 3L}, {3L, -1L}}) {
    const auto t0 = Clock::now();
    const Decision d = decide_semiscalar(quartic(a), quartic(b));
    worst = std::max(worst, seconds_since(t0));
    if (!std::holds_alternative<outcome::NoWitness>(d.outcome)) return false;
  }
  note = "slowest case " + std::to_string(worst) + " s";
  return worst < 1.0;
}

bool criterion2(std::string&) {
  const Decision d = decide_semiscalar(quartic(1), quartic(-1));
  if (!d.equivalent()) return false;
  const EquivalenceWitness& w = d.witness();
  const PolyMatrix v = to_poly_matrix(w.v);
  if (!(v * quartic(1) == quartic(-1) * w.q)) return false;
  const Poly det = determinant(w.q);
  if (det.degree() != 0) return false;
  const PolyMatrix displayed{{P({1, 2, 2}), P({0, 0, 0, 0, 2})}, {P({-2}), P({-1, 2, -2})}};
  return proportional(w.q, displayed);
}

bool criterion3(std::string&) {
  const MatrixFamily fa = sample_family_a();
  const MatrixFamily fb = sample_family_b();
  const Decision d = decide_family_similarity(fa, fb);
  if (!d.equivalent()) return false;
  const RatMatrix& v = d.witness().v;
  if (!(v == R({{1, -1}, {0, 1}}))) return false;
  const RatMatrix vi = invert(v);
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(fa.members[i] == vi * fb.members[i] * v)) return false;
  }
  return true;
}

bool criterion4(std::string&) {
  const std::string pair = data("known_b.json") + " " + data("known_a.json") + " ";
  return cli("verify " + pair + data("known_witness.json")) == 0 &&
         cli("verify " + pair + data("known_witness_perturbed.json")) == 1;
}

bool smith_ok(const PolyMatrix& a, const SmithDecomposition& s) {
  if (!(s.u * a * s.w == s.s)) return false;
  if (!is_unimodular(s.u) || !is_unimodular(s.w)) return false;
  for (std::size_t i = 0; i < s.s.rows(); ++i) {
    for (std::size_t j = 0; j < s.s.cols(); ++j) {
      if (i != j && !s.s(i, j).is_zero()) return false;
    }
  }
  const auto& f = s.invariant_factors;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (!f[i].is_monic() || (!f[i + 1].is_zero() && !divrem(f[i + 1], f[i]).remainder.is_zero())) return false;
  }
  return true;
}

bool criterion5(std::string& note) {
  const auto t0 = Clock::now();
  const SmithDecomposition s_quartic = smith_decompose(quartic(1));
  if (!smith_ok(quartic(1), s_quartic) || !(s_quartic.s == diag({Poly(1), P({0, 0, 0, 0, 1})}))) return false;
  const PolyMatrix lifted = lift_family(sample_family_a());
  const SmithDecomposition s_lifted = smith_decompose(lifted);
  if (!smith_ok(lifted, s_lifted) || !(s_lifted.s == diag({Poly(1), P({0, 2, -1, -2, 1})}))) return false;
  Rng rng(0xacce55);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const PolyMatrix a = random_polymat(rng, n, n, 4);
    if (!smith_ok(a, smith_decompose(a))) return false;
  }
  const double t = seconds_since(t0);
  note = std::to_string(t) + " s";
  return t < 10.0;
}

bool criterion6(std::string& note) {
  const auto t0 = Clock::now();
  Rng rng(0x5eed6);
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const RoundtripInstance inst = random_roundtrip_instance(rng, n);
    const Decision d = decide_semiscalar(inst.a, inst.b);
    if (!d.equivalent() || !verify_witness(inst.a, inst.b, d.witness())) ++failures;
  }
  const double t = seconds_since(t0);
  note = std::to_string(failures) + " failures, " + std::to_string(t) + " s";
  return failures == 0 && t < 300.0;
}

bool criterion7(std::string& note) {
  Rng rng(0x5eed7);
  int divisible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Poly b = random_split_poly(rng, static_cast<int>(uniform(rng, 1, 4)));
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    PolyMatrix a = random_polymat(rng, n, n, 3);
    if (trial % 2 == 0) a = b * a;
    if (trial % 5 == 0) a(0, 0) += P({0, 1});
    const bool oracle = divrem(a, b.monic()).remainder.is_zero();
    divisible += oracle ? 1 : 0;
    const auto f = rational_linear_factorization(b);
    if (!f || check_representation(a, *f) != oracle) return false;
  }
  note = std::to_string(divisible) + " divisible of 100";
  return true;
}

bool criterion8(std::string&) {
  Rng rng(0x5eed8);
  int done = 0;
  while (done < 50) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const auto s = random_invariant_factors(rng, n, 6);
    const PolyMatrix a = random_unimodular(rng, n, 2) * diag(s) * random_unimodular(rng, n, 2);
    if (determinant(a).is_zero()) continue;
    const Poly prev = smith_decompose(a).invariant_factors[n - 2];
    const auto f = rational_linear_factorization(prev);
    if (!f) continue;
    if (!build_block_matrix(adjugate(a), *f).is_zero()) return false;
    ++done;
  }
  return true;
}

bool criterion9(std::string& note) {
  const ReshapeAgreement r = exhaustive_reshape_agreement();
  note = std::to_string(r.cases) + " spans, " + std::to_string(r.disagreements) + " disagreements";
  return r.cases > 0 && r.disagreements == 0 && r.unsound == 0;
}

bool criterion10(std::string&) {
  return cli("decide semiscalar " + data("singular.json") + " " + data("quartic_a1.json")) == 5 &&
         cli("decide semiscalar " + data("quartic_a1.json") + " " + data("singular.json")) == 5;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<bool(std::string&)>> criteria[] = {
      {"worked example sweep (a, -a) and no-witness pairs", criterion1},
      {"recovered Q for a = 1", criterion2},
      {"family similarity witness", criterion3},
      {"cli verify on displayed witness and perturbation", criterion4},
      {"smith fixtures and 100 random decompositions", criterion5},
      {"200 random roundtrips", criterion6},
      {"representation check vs division oracle", criterion7},
      {"adjugate annihilated by M[A*, s_{n-1}]", criterion8},
      {"reshape search vs brute force", criterion9},
      {"singular input rejected with exit 5", criterion10},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    std::string note;
    bool ok = false;
    try {
      ok = fn(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", index, name, note.empty() ? "" : (" [" + note + "]").c_str());
    failed += ok ? 0 : 1;
    ++index;
  }
  return failed;
}
