// ssequiv: decide semi-scalar equivalence, PS-equivalence and simultaneous
// similarity over Q, and verify witnesses.
//
// Exit codes: 0 equivalent/verified, 1 not equivalent/no witness/failed
// verification, 2 parse or usage error, 3 unsupported, 4 inconclusive,
// 5 singular input.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssequiv/engine.hpp"
#include "ssequiv/io.hpp"
#include "ssequiv/smith.hpp"

namespace {

using namespace ssequiv;
using nlohmann::json;

std::string diag_string(const std::vector<Poly>& factors, std::size_t n) {
  std::string out = "diag(";
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ", ";
    out += i < factors.size() ? factors[i].str() : "0";
  }
  return out + ")";
}

std::string factor_list(const std::vector<Poly>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i == 0 ? "" : ", ") + factors[i].str();
  return out;
}

std::string factorization_string(const LinearFactorization& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (const auto& lf : f.factors) {
    const Poly linear(std::vector<Rational>{-lf.root, Rational(1)});
    out += lf.root.is_zero() ? linear.str() : "(" + linear.str() + ")";
    if (lf.multiplicity > 1) out += "^" + std::to_string(lf.multiplicity);
  }
  return out;
}

PolyMatrix expect_polymat(const io::MatrixFile& f, const std::string& path) {
  if (const auto* p = std::get_if<PolyMatrix>(&f)) return *p;
  throw io::ParseError(path + ": expected kind 'polymat'");
}

MatrixFamily expect_family(const io::MatrixFile& f, const std::string& path) {
  if (const auto* p = std::get_if<MatrixFamily>(&f)) return *p;
  throw io::ParseError(path + ": expected kind 'family'");
}

int run_smith(const std::string& path, bool as_json) {
  const PolyMatrix a = expect_polymat(io::load(path), path);
  const SmithDecomposition s = smith_decompose(a);
  const bool ok = s.u * a * s.w == s.s && is_unimodular(s.u) && is_unimodular(s.w);
  if (as_json) {
    json out{{"format_version", io::kFormatVersion}, {"kind", "smith"}};
    json factors = json::array();
    for (const auto& f : s.invariant_factors) factors.push_back(io::poly_to_json(f));
    out["invariant_factors"] = std::move(factors);
    out["S"] = io::to_json(s.s);
    out["U"] = io::to_json(s.u);
    out["W"] = io::to_json(s.w);
    out["verified"] = ok;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "S = " << diag_string(s.invariant_factors, a.rows()) << "\n"
              << "U = " << to_string(s.u) << "\n"
              << "W = " << to_string(s.w) << "\n"
              << "U*A*W = S: " << (ok ? "verified" : "FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

void print_report(std::ostream& os, const std::string& mode, const Decision& d) {
  const auto& t = d.trace;
  os << "mode: " << mode << "\n";
  os << "invariant factors (A): " << factor_list(t.invariant_factors_a) << "\n";
  os << "invariant factors (B): " << factor_list(t.invariant_factors_b) << "\n";
  if (t.top_factorization) os << "last invariant factor splits as " << factorization_string(*t.top_factorization) << "\n";
  if (t.rank) {
    os << "rank of coefficient system: " << *t.rank << " (" << *t.system_rows << " nonzero rows)\n";
  }
  if (t.nullspace_dim) os << "solution space dimension: " << *t.nullspace_dim << "\n";
  os << "outcome: " << io::outcome_tag(d.outcome) << "\n";
  if (const auto* u = std::get_if<outcome::Unsupported>(&d.outcome)) os << "reason: " << u->reason << "\n";
  if (const auto* i = std::get_if<outcome::Inconclusive>(&d.outcome)) os << "reason: " << i->reason << "\n";
  if (d.equivalent()) {
    const auto& w = d.witness();
    os << "V = " << to_string(w.v) << "\n"
       << "P = " << to_string(w.p) << "\n"
       << "Q(λ) = " << to_string(w.q) << "\n";
    os << (d.relation == Relation::kSemiScalar ? "A = P*B*Q(λ): verified\n" : "A = Q(λ)*B*P: verified\n");
  }
}

struct DecideArgs {
  std::string mode;
  std::string a;
  std::string b;
  bool as_json = false;
  std::size_t max_grid_vars = 8;
  bool no_normalize = false;
  std::string witness_out;
};

int run_decide(const DecideArgs& args) {
  DecideOptions options;
  options.reshape.max_grid_vars = args.max_grid_vars;
  options.normalize = !args.no_normalize;

  const io::MatrixFile fa = io::load(args.a);
  const io::MatrixFile fb = io::load(args.b);
  Decision d;
  if (args.mode == "similar") {
    d = decide_family_similarity(expect_family(fa, args.a), expect_family(fb, args.b), options);
  } else if (args.mode == "ps") {
    d = decide_ps(expect_polymat(fa, args.a), expect_polymat(fb, args.b), options);
  } else {
    d = decide_semiscalar(expect_polymat(fa, args.a), expect_polymat(fb, args.b), options);
  }

  if (args.as_json) {
    print_report(std::cerr, args.mode, d);
    std::cout << io::decision_to_json(args.mode, d).dump(2) << "\n";
  } else {
    print_report(std::cout, args.mode, d);
  }
  if (!args.witness_out.empty() && d.equivalent()) {
    io::save(args.witness_out, io::witness_to_json(d.relation, d.witness()));
  }
  return io::exit_code(d.outcome);
}

int run_verify(const std::string& a_path, const std::string& b_path, const std::string& w_path) {
  const io::MatrixFile fa = io::load(a_path);
  const io::MatrixFile fb = io::load(b_path);
  const io::MatrixFile fw = io::load(w_path);
  const auto* wf = std::get_if<io::WitnessFile>(&fw);
  if (wf == nullptr) throw io::ParseError(w_path + ": expected kind 'witness'");
  const EquivalenceWitness w = wf->resolve();

  bool ok = false;
  if (std::holds_alternative<MatrixFamily>(fa)) {
    ok = verify_similarity(expect_family(fa, a_path), expect_family(fb, b_path), w.v);
    std::cout << "A_i = V^-1*B_i*V for all i: " << (ok ? "verified" : "FAILED") << "\n";
  } else {
    ok = verify(wf->relation, expect_polymat(fa, a_path), expect_polymat(fb, b_path), w);
    std::cout << (wf->relation == Relation::kSemiScalar ? "A = P*B*Q(λ): " : "A = Q(λ)*B*P: ")
              << (ok ? "verified" : "FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision procedures for semi-scalar equivalence of polynomial matrices over Q"};
  app.require_subcommand(1);

  std::string smith_path;
  bool smith_json = false;
  auto* smith = app.add_subcommand("smith", "Smith normal form with unimodular transforms");
  smith->add_option("file", smith_path, "polymat file")->required();
  smith->add_flag("--json", smith_json, "machine-readable output");

  DecideArgs dargs;
  auto* decide = app.add_subcommand("decide", "Decide semiscalar / ps equivalence or family similarity");
  decide->add_option("mode", dargs.mode, "semiscalar | ps | similar")
      ->required()
      ->check(CLI::IsMember({"semiscalar", "ps", "similar"}));
  decide->add_option("a", dargs.a, "first matrix (or family) file")->required();
  decide->add_option("b", dargs.b, "second matrix (or family) file")->required();
  decide->add_flag("--json", dargs.as_json, "print a JSON report on stdout (human report goes to stderr)");
  decide->add_option("--max-grid-vars", dargs.max_grid_vars, "largest solution-space dimension searched exhaustively")
      ->capture_default_str();
  decide->add_flag("--no-normalize", dargs.no_normalize, "report the raw witness without scaling");
  decide->add_option("--witness-out", dargs.witness_out, "write the witness file here on success");

  std::string va;
  std::string vb;
  std::string vw;
  auto* verify_cmd = app.add_subcommand("verify", "Check a witness file against A and B");
  verify_cmd->add_option("a", va)->required();
  verify_cmd->add_option("b", vb)->required();
  verify_cmd->add_option("witness", vw)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return io::kExitParseError;
  }

  try {
    if (*smith) return run_smith(smith_path, smith_json);
    if (*decide) return run_decide(dargs);
    return run_verify(va, vb, vw);
  } catch (const SingularInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::kExitSingular;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return io::kExitParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::kExitParseError;
  }
}
