#pragma once

// JSON encodings of matrices, algebra specs, Hamiltonians, unitaries, graphs and
// sweep configurations. Validation failures raise ConfigError carrying the
// source name and line:column of the offending value.

#include "aotoc/algebra.hpp"
#include "aotoc/lattice.hpp"
#include "aotoc/otoc.hpp"
#include "aotoc/partition.hpp"
#include "aotoc/pauli.hpp"
#include "aotoc/rate.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace aotoc {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Parsed JSON with the position of every value, keyed by JSON pointer.
class JsonDocument {
 public:
  static JsonDocument parse(const std::string& text, std::string source);
  static JsonDocument load(const std::string& path);

  const Json& root() const { return root_; }
  const std::string& source() const { return source_; }
  SourcePos position(const std::string& pointer) const;
  /// "source:line:col: message" at the value under `pointer`.
  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;

 private:
  Json root_;
  std::string source_;
  std::map<std::string, SourcePos> positions_;
};

/// Position of a byte offset in text (1-based line and column).
SourcePos position_of_offset(const std::string& text, std::size_t offset);

/// Typed access relative to a JSON pointer, failing with positions.
class JsonView {
 public:
  JsonView(const JsonDocument& doc, std::string pointer);

  const Json& value() const;
  const std::string& pointer() const { return pointer_; }
  const JsonDocument& document() const { return *doc_; }
  bool has(const std::string& key) const;
  JsonView at(const std::string& key) const;  // missing key: error naming it
  JsonView at(std::size_t index) const;
  std::size_t size() const;
  bool is_object() const { return value().is_object(); }
  bool is_array() const { return value().is_array(); }
  bool is_string() const { return value().is_string(); }

  double number() const;
  long long integer() const;
  bool boolean() const;
  std::string string() const;

  [[noreturn]] void fail(const std::string& message) const { doc_->fail(pointer_, message); }

 private:
  const JsonDocument* doc_;
  std::string pointer_;
};

// Matrices: arrays of rows; entries are numbers or [re, im] pairs.
Json matrix_to_json(const Operator& m);
Operator matrix_from_json(const JsonView& v);

/// Algebra spec: {"type": masa|bipartite|generators|stabilizer|collective_spin, ...,
/// "commutant": bool}. "type" may be omitted when "generators" holds matrices.
struct AlgebraSpec {
  std::string type;
  MatrixAlgebra algebra;
  std::optional<BipartiteShape> shape;     // bipartite
  std::optional<Side> side;                // bipartite
  std::optional<StabilizerGroup> group;    // stabilizer
  std::optional<Operator> basis;           // masa
  bool commutant = false;
};

AlgebraSpec algebra_from_json(const JsonView& v, Seed seed, Tolerances tol);

/// Hamiltonians: {"matrix": ...}, {"pauli": ["c WORD", ...]},
/// {"terms": [{"coeff": c, "pauli": WORD}, ...]} or a string "c WORD; c WORD".
Operator hamiltonian_from_json(const JsonView& v);
/// JSON file, or plain text lines `coeff WORD` otherwise.
Operator load_hamiltonian(const std::string& path);

/// Unitaries: {"matrix": ...}, {"hamiltonian": {...}, "t": t} (exp(-iHt)) or
/// {"haar": {"d": d, "seed": s}}.
Operator unitary_from_json(const JsonView& v);

InteractionGraph graph_from_json(const JsonView& v);
Json graph_to_json(const InteractionGraph& g);
Json cut_to_json(const CutResult& c);

/// x_grid is an array or {"start", "stop", "step"}.
SweepConfig sweep_config_from_json(const JsonView& v);
Json sweep_config_to_json(const SweepConfig& cfg);

Json rate_report_to_json(const RateReport& r);

struct FamilyFile {
  FamilySpec family;
  std::optional<Operator> hamiltonian;
};

/// {"kind": ..., "thetas": [...] | {"start", "stop", "steps", "endpoint"}, "hamiltonian"?,
///  "base"?, "generator"?, "algebras"? [{"label", ...algebra spec}]}.
FamilyFile family_from_json(const JsonView& v, Seed seed, Tolerances tol);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace aotoc
