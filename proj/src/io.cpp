#include "ssequiv/io.hpp"

#include <fstream>
#include <sstream>

namespace ssequiv::io {

using nlohmann::json;

namespace {

Rational coefficient_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("coefficient must be a rational string, got " + j.dump());
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::size_t size_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long>() < 1) throw ParseError(std::string("field '") + name + "' must be a positive integer");
  return v.get<std::size_t>();
}

template <typename T, typename ParseEntry>
Matrix<T> square_from_json(const json& rows, std::size_t n, ParseEntry parse_entry) {
  if (!rows.is_array() || rows.size() != n) throw ParseError("expected " + std::to_string(n) + " rows");
  std::vector<T> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw ParseError("ragged or wrongly sized row: " + row.dump());
    for (const auto& e : row) entries.push_back(parse_entry(e));
  }
  return Matrix<T>(n, n, std::move(entries));
}

RatMatrix ratmat_entries(const json& rows, std::size_t n) {
  return square_from_json<Rational>(rows, n, coefficient_from_json);
}

PolyMatrix polymat_entries(const json& rows, std::size_t n) {
  return square_from_json<Poly>(rows, n, poly_from_json);
}

json header(std::string_view kind, std::size_t n) {
  return json{{"format_version", kFormatVersion}, {"kind", kind}, {"n", n}};
}

template <typename T, typename Emit>
json rows_to_json(const Matrix<T>& m, Emit emit) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(emit(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Relation relation_from_string(const std::string& s) {
  if (s == "semiscalar") return Relation::kSemiScalar;
  if (s == "ps") return Relation::kPs;
  throw ParseError("unknown relation '" + s + "'");
}

RatMatrix expect_ratmat(const json& j) {
  auto m = from_json(j);
  if (auto* r = std::get_if<RatMatrix>(&m)) return std::move(*r);
  throw ParseError("expected a ratmat fragment");
}

PolyMatrix expect_polymat(const json& j) {
  auto m = from_json(j);
  if (auto* p = std::get_if<PolyMatrix>(&m)) return std::move(*p);
  throw ParseError("expected a polymat fragment");
}

}  // namespace

EquivalenceWitness WitnessFile::resolve() const {
  try {
    if (v && p) return {*v, *p, q};
    if (p) return {invert(*p), *p, q};
    if (v) return {*v, invert(*v), q};
  } catch (const std::domain_error&) {
    throw ParseError("witness scalar matrix is singular");
  }
  throw ParseError("witness needs at least one of V and P");
}

json poly_to_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.str());
  return out;
}

Poly poly_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be a list of coefficients, got " + j.dump());
  std::vector<Rational> coeffs;
  coeffs.reserve(j.size());
  for (const auto& c : j) coeffs.push_back(coefficient_from_json(c));
  return Poly(std::move(coeffs));
}

json to_json(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("matrix files hold square matrices");
  json out = header("polymat", m.rows());
  out["entries"] = rows_to_json(m, poly_to_json);
  return out;
}

json to_json(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("matrix files hold square matrices");
  json out = header("ratmat", m.rows());
  out["entries"] = rows_to_json(m, [](const Rational& x) { return x.str(); });
  return out;
}

json to_json(const MatrixFamily& f) {
  json out = header("family", f.n);
  out["r"] = f.members.size();
  json members = json::array();
  for (const auto& m : f.members) members.push_back(rows_to_json(m, [](const Rational& x) { return x.str(); }));
  out["entries"] = std::move(members);
  return out;
}

json to_json(const WitnessFile& w) {
  json out = header("witness", w.q.rows());
  out["relation"] = relation_name(w.relation);
  if (w.v) out["V"] = to_json(*w.v);
  if (w.p) out["P"] = to_json(*w.p);
  out["Q"] = to_json(w.q);
  return out;
}

json witness_to_json(Relation relation, const EquivalenceWitness& w) {
  return to_json(WitnessFile{relation, w.v, w.p, w.q});
}

MatrixFile from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix file must be a JSON object");
  const json& version = field(j, "format_version");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
    throw ParseError("unsupported format_version " + version.dump());
  }
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) throw ParseError("field 'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  const std::size_t n = size_field(j, "n");

  if (kind == "polymat") return polymat_entries(field(j, "entries"), n);
  if (kind == "ratmat") return ratmat_entries(field(j, "entries"), n);
  if (kind == "family") {
    const std::size_t r = size_field(j, "r");
    const json& members = field(j, "entries");
    if (!members.is_array() || members.size() != r) throw ParseError("family must list exactly r matrices");
    MatrixFamily f{n, {}};
    for (const auto& m : members) f.members.push_back(ratmat_entries(m, n));
    return f;
  }
  if (kind == "witness") {
    WitnessFile w;
    const json& rel = field(j, "relation");
    if (!rel.is_string()) throw ParseError("field 'relation' must be a string");
    w.relation = relation_from_string(rel.get<std::string>());
    if (j.contains("V")) w.v = expect_ratmat(j["V"]);
    if (j.contains("P")) w.p = expect_ratmat(j["P"]);
    w.q = expect_polymat(field(j, "Q"));
    for (const RatMatrix* m : {w.v ? &*w.v : nullptr, w.p ? &*w.p : nullptr}) {
      if (m != nullptr && m->rows() != n) throw ParseError("witness fragment size does not match n");
    }
    if (w.q.rows() != n) throw ParseError("witness fragment size does not match n");
    if (!w.v && !w.p) throw ParseError("witness needs at least one of V and P");
    return w;
  }
  throw ParseError("unknown kind '" + kind + "'");
}

MatrixFile parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

MatrixFile load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void save(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::string_view relation_name(Relation r) { return r == Relation::kSemiScalar ? "semiscalar" : "ps"; }

std::string_view outcome_tag(const DecisionOutcome& o) {
  struct Tag {
    std::string_view operator()(const outcome::NotEquivalent&) const { return "not_equivalent"; }
    std::string_view operator()(const outcome::NoWitness&) const { return "no_witness"; }
    std::string_view operator()(const outcome::Equivalent&) const { return "equivalent"; }
    std::string_view operator()(const outcome::Unsupported&) const { return "unsupported"; }
    std::string_view operator()(const outcome::Inconclusive&) const { return "inconclusive"; }
  };
  return std::visit(Tag{}, o);
}

int exit_code(const DecisionOutcome& o) {
  struct Code {
    int operator()(const outcome::NotEquivalent&) const { return 1; }
    int operator()(const outcome::NoWitness&) const { return 1; }
    int operator()(const outcome::Equivalent&) const { return 0; }
    int operator()(const outcome::Unsupported&) const { return 3; }
    int operator()(const outcome::Inconclusive&) const { return 4; }
  };
  return std::visit(Code{}, o);
}

json decision_to_json(std::string_view mode, const Decision& d) {
  json out{{"format_version", kFormatVersion}, {"mode", mode}, {"outcome", outcome_tag(d.outcome)}};
  out["rank"] = d.trace.rank ? json(*d.trace.rank) : json(nullptr);
  out["nullspace_dim"] = d.trace.nullspace_dim ? json(*d.trace.nullspace_dim) : json(nullptr);
  json factors = json::array();
  for (const auto& s : d.trace.invariant_factors_a) factors.push_back(poly_to_json(s));
  out["invariant_factors"] = std::move(factors);
  if (d.equivalent()) {
    out["witness"] = witness_to_json(d.relation, d.witness());
  } else if (const auto* u = std::get_if<outcome::Unsupported>(&d.outcome)) {
    out["reason"] = u->reason;
  } else if (const auto* i = std::get_if<outcome::Inconclusive>(&d.outcome)) {
    out["reason"] = i->reason;
  }
  return out;
}

}  // namespace ssequiv::io
