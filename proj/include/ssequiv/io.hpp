#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "ssequiv/engine.hpp"

namespace ssequiv::io {

inline constexpr std::string_view kFormatVersion = "1";

/// Malformed or ill-typed matrix file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Witness as stored on disk. Either of V and P may be omitted; the missing
/// one is the inverse of the other.
struct WitnessFile {
  Relation relation = Relation::kSemiScalar;
  std::optional<RatMatrix> v;
  std::optional<RatMatrix> p;
  PolyMatrix q;

  /// Fills in the missing half of (V, P). Throws ParseError if neither is
  /// present or the given one is singular.
  [[nodiscard]] EquivalenceWitness resolve() const;
};

using MatrixFile = std::variant<PolyMatrix, RatMatrix, MatrixFamily, WitnessFile>;

// Coefficient lists are ascending by degree; a coefficient is "p", "-p" or
// "p/q". The zero polynomial is [].
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PolyMatrix& m);
nlohmann::json to_json(const RatMatrix& m);
nlohmann::json to_json(const MatrixFamily& f);
nlohmann::json to_json(const WitnessFile& w);
nlohmann::json witness_to_json(Relation relation, const EquivalenceWitness& w);

MatrixFile from_json(const nlohmann::json& j);
MatrixFile parse(std::string_view text);
MatrixFile load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const nlohmann::json& j);

std::string_view relation_name(Relation r);
std::string_view outcome_tag(const DecisionOutcome& o);

/// 0 equivalent, 1 no witness or not equivalent, 3 unsupported, 4 inconclusive.
int exit_code(const DecisionOutcome& o);

inline constexpr int kExitParseError = 2;
inline constexpr int kExitSingular = 5;

/// Machine-readable decision report for `decide --json`.
nlohmann::json decision_to_json(std::string_view mode, const Decision& d);

}  // namespace ssequiv::io
