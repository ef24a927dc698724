#include "aotoc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace aotoc {

namespace {

std::string escape_pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Walks syntactically valid JSON and records where each value starts.
class PositionScanner {
 public:
  PositionScanner(const std::string& text, std::map<std::string, SourcePos>& out) : t_(text), out_(out) {}

  void run() { value(""); }

 private:
  void ws() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n' || t_[i_] == '\r')) advance();
  }

  void advance() {
    if (t_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(t_[i_]) & 0xC0) != 0x80) {
      ++col_;  // count code points, not UTF-8 continuation bytes
    }
    ++i_;
  }

  std::string string_token() {
    std::string s;
    advance();  // opening quote
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\' && i_ + 1 < t_.size()) {
        advance();
        switch (t_[i_]) {
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          case 'r': s += '\r'; break;
          case 'b': s += '\b'; break;
          case 'f': s += '\f'; break;
          default: s += t_[i_];
        }
      } else {
        s += t_[i_];
      }
      advance();
    }
    if (i_ < t_.size()) advance();  // closing quote
    return s;
  }

  void value(const std::string& ptr) {
    ws();
    if (i_ >= t_.size()) return;
    out_[ptr] = {line_, col_};
    const char c = t_[i_];
    if (c == '{') {
      advance();
      ws();
      if (i_ < t_.size() && t_[i_] == '}') {
        advance();
        return;
      }
      while (i_ < t_.size()) {
        ws();
        const std::string key = string_token();
        ws();
        if (i_ < t_.size() && t_[i_] == ':') advance();
        value(ptr + "/" + escape_pointer_token(key));
        ws();
        if (i_ < t_.size() && t_[i_] == ',') {
          advance();
          continue;
        }
        if (i_ < t_.size()) advance();  // '}'
        break;
      }
    } else if (c == '[') {
      advance();
      ws();
      if (i_ < t_.size() && t_[i_] == ']') {
        advance();
        return;
      }
      for (std::size_t k = 0; i_ < t_.size(); ++k) {
        value(ptr + "/" + std::to_string(k));
        ws();
        if (i_ < t_.size() && t_[i_] == ',') {
          advance();
          continue;
        }
        if (i_ < t_.size()) advance();  // ']'
        break;
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < t_.size() && std::string_view(",]} \t\r\n").find(t_[i_]) == std::string_view::npos) advance();
    }
  }

  const std::string& t_;
  std::map<std::string, SourcePos>& out_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

std::string parent_pointer(const std::string& ptr) {
  const auto slash = ptr.rfind('/');
  return slash == std::string::npos ? std::string() : ptr.substr(0, slash);
}

Complex entry_from_json(const JsonView& v) {
  const Json& j = v.value();
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  v.fail("matrix entry must be a number or a [re, im] pair");
}

Side side_from(const JsonView& v) {
  const std::string s = v.string();
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  v.fail("side must be \"A\" or \"B\"");
}

int positive_int(const JsonView& v, const char* what, long long hi = 1 << 20) {
  const long long k = v.integer();
  if (k < 1 || k > hi) v.fail(std::string(what) + " must be in [1, " + std::to_string(hi) + "]");
  return static_cast<int>(k);
}

std::vector<double> thetas_from_json(const JsonView& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(v.at(k).number());
    return out;
  }
  if (!v.is_object()) v.fail("thetas must be an array or a {start, stop, count} object");
  double scale = 1.0;
  if (v.has("unit")) {
    const std::string unit = v.at("unit").string();
    if (unit == "pi") scale = M_PI;
    else if (unit != "rad") v.at("unit").fail("unit must be \"pi\" or \"rad\"");
  }
  const double start = v.at("start").number() * scale;
  const double stop = v.at("stop").number() * scale;
  const int count = positive_int(v.at("count"), "count", 1 << 20);
  const bool endpoint = v.has("endpoint") ? v.at("endpoint").boolean() : true;
  const int div = endpoint ? std::max(count - 1, 1) : count;
  for (int k = 0; k < count; ++k) out.push_back(start + (stop - start) * k / div);
  return out;
}

}  // namespace

SourcePos position_of_offset(const std::string& text, std::size_t offset) {
  SourcePos p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++p.column;
    }
  }
  return p;
}

JsonDocument JsonDocument::parse(const std::string& text, std::string source) {
  JsonDocument doc;
  doc.source_ = std::move(source);
  try {
    doc.root_ = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const SourcePos p = position_of_offset(text, offset);
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    if (colon != std::string::npos) what = what.substr(colon);
    throw ConfigError(doc.source_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": invalid JSON (" +
                      what + ")");
  }
  PositionScanner(text, doc.positions_).run();
  return doc;
}

JsonDocument JsonDocument::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

SourcePos JsonDocument::position(const std::string& pointer) const {
  for (std::string p = pointer;; p = parent_pointer(p)) {
    const auto it = positions_.find(p);
    if (it != positions_.end()) return it->second;
    if (p.empty()) return {};
  }
}

void JsonDocument::fail(const std::string& pointer, const std::string& message) const {
  const SourcePos p = position(pointer);
  const std::string where = pointer.empty() ? std::string() : " (at " + pointer + ")";
  throw ConfigError(source_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + message + where);
}

JsonView::JsonView(const JsonDocument& doc, std::string pointer) : doc_(&doc), pointer_(std::move(pointer)) {}

const Json& JsonView::value() const { return doc_->root().at(Json::json_pointer(pointer_)); }

bool JsonView::has(const std::string& key) const { return value().is_object() && value().contains(key); }

JsonView JsonView::at(const std::string& key) const {
  if (!value().is_object()) fail("expected an object");
  if (!value().contains(key)) fail("missing required key \"" + key + "\"");
  return {*doc_, pointer_ + "/" + escape_pointer_token(key)};
}

JsonView JsonView::at(std::size_t index) const {
  if (!value().is_array()) fail("expected an array");
  if (index >= value().size()) fail("index " + std::to_string(index) + " out of range");
  return {*doc_, pointer_ + "/" + std::to_string(index)};
}

std::size_t JsonView::size() const {
  if (!value().is_array()) fail("expected an array");
  return value().size();
}

double JsonView::number() const {
  if (!value().is_number()) fail("expected a number");
  const double x = value().get<double>();
  if (!std::isfinite(x)) fail("number is not finite");
  return x;
}

long long JsonView::integer() const {
  const Json& j = value();
  if (j.is_number_unsigned()) {
    const auto u = j.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(std::numeric_limits<long long>::max())) fail("integer too large");
    return static_cast<long long>(u);
  }
  if (j.is_number_integer()) return j.get<long long>();
  fail("expected an integer");
}

bool JsonView::boolean() const {
  if (!value().is_boolean()) fail("expected true or false");
  return value().get<bool>();
}

std::string JsonView::string() const {
  if (!value().is_string()) fail("expected a string");
  return value().get<std::string>();
}

Json matrix_to_json(const Operator& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator matrix_from_json(const JsonView& v) {
  if (!v.is_array() || v.size() == 0) v.fail("matrix must be a nonempty array of rows");
  const std::size_t rows = v.size();
  const JsonView first = v.at(0);
  if (!first.is_array()) first.fail("matrix row must be an array");
  const std::size_t cols = first.size();
  Operator m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const JsonView row = v.at(i);
    if (!row.is_array() || row.size() != cols)
      row.fail("matrix row must have " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry_from_json(row.at(j));
  }
  return m;
}

AlgebraSpec algebra_from_json(const JsonView& v, Seed seed, Tolerances tol) {
  if (!v.is_object()) v.fail("algebra spec must be an object");
  // A bare {"generators": [matrices]} is a generated algebra.
  const std::string kind = v.has("type") || !v.has("generators") ? v.at("type").string() : "generators";
  AlgebraSpec spec{kind, masa_algebra(1), {}, {}, {}, {}, false};
  const std::string& type = spec.type;
  if (type == "masa") {
    int d = 0;
    if (v.has("d")) d = positive_int(v.at("d"), "d", 64);
    else if (v.has("basis")) d = static_cast<int>(v.at("basis").size());
    else v.at("d");  // reports the missing key
    if (d < 1 || d > 64) v.fail("d must be in [1, 64]");
    if (v.has("basis")) {
      const Operator b = matrix_from_json(v.at("basis"));
      if (b.rows() != d || b.cols() != d) v.at("basis").fail("basis must be d x d");
      if (unitarity_residual(b) > 1e-8) v.at("basis").fail("basis matrix is not unitary");
      spec.basis = b;
    }
    spec.algebra = masa_algebra(d, spec.basis);
  } else if (type == "bipartite") {
    const int dA = positive_int(v.at("dA"), "dA", 64);
    const int dB = positive_int(v.at("dB"), "dB", 64);
    if (dA * dB > 64) v.fail("bipartite algebra: dA * dB must be at most 64");
    spec.shape = BipartiteShape{dA, dB};
    spec.side = v.has("side") ? side_from(v.at("side")) : Side::A;
    spec.algebra = bipartite_algebra(*spec.shape, *spec.side);
  } else if (type == "generators") {
    const JsonView gens = v.at("generators");
    if (!v.has("d") && gens.size() == 0) v.at("d");
    const int d = v.has("d") ? positive_int(v.at("d"), "d", 64) : static_cast<int>(gens.at(0).size());
    std::vector<Operator> ops;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Operator g = matrix_from_json(gens.at(k));
      if (g.rows() != d || g.cols() != d) gens.at(k).fail("generator must be d x d");
      ops.push_back(std::move(g));
    }
    spec.algebra = generate_algebra(ops, d, seed, tol);
  } else if (type == "stabilizer") {
    const JsonView gens = v.at("generators");
    std::vector<std::string> words;
    for (std::size_t k = 0; k < gens.size(); ++k) words.push_back(gens.at(k).string());
    try {
      spec.group = StabilizerGroup::build(words);
      spec.algebra = group_algebra(*spec.group);
    } catch (const PauliError& e) {
      gens.fail(e.what());
    }
  } else if (type == "collective_spin") {
    const char* key = v.has("n_qubits") ? "n_qubits" : "n";
    spec.algebra = collective_spin_algebra(positive_int(v.at(key), key, 6));
  } else {
    v.at("type").fail("unknown algebra type \"" + type +
                      "\" (expected masa, bipartite, generators, stabilizer or collective_spin)");
  }
  if (v.has("commutant") && v.at("commutant").boolean()) {
    spec.commutant = true;
    spec.algebra = spec.algebra.commutant();
    if (spec.side) spec.side = *spec.side == Side::A ? Side::B : Side::A;
    spec.group.reset();  // the closed stabilizer form refers to the group algebra itself
  }
  return spec;
}

Operator hamiltonian_from_json(const JsonView& v) {
  if (v.is_string()) {
    // Inline `coeff WORD` lines; ';' also separates terms.
    std::string text = v.string();
    std::replace(text.begin(), text.end(), ';', '\n');
    try {
      return to_matrix(PauliHamiltonian::parse(text));
    } catch (const PauliError& e) {
      v.fail(e.what());
    }
  }
  if (!v.is_object()) v.fail("Hamiltonian must be an object or a string of `coeff WORD` terms");
  Operator h;
  if (v.has("matrix")) {
    h = matrix_from_json(v.at("matrix"));
    if (h.rows() != h.cols()) v.at("matrix").fail("Hamiltonian matrix must be square");
    if (hermiticity_residual(h) > 1e-10 * std::max(1.0, h.norm())) v.at("matrix").fail("Hamiltonian is not hermitian");
    return 0.5 * (h + h.adjoint());
  }
  if (v.has("pauli")) {
    const JsonView lines = v.at("pauli");
    std::string text;
    for (std::size_t k = 0; k < lines.size(); ++k) text += lines.at(k).string() + "\n";
    try {
      return to_matrix(PauliHamiltonian::parse(text));
    } catch (const PauliError& e) {
      lines.fail(e.what());
    }
  }
  if (v.has("terms")) {
    const JsonView terms = v.at("terms");
    PauliHamiltonian ph;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const JsonView t = terms.at(k);
      try {
        const std::string word = t.at("pauli").string();
        if (k == 0) ph = PauliHamiltonian(static_cast<int>(parse_pauli(word).n));
        ph.add(t.at("coeff").number(), word);
      } catch (const PauliError& e) {
        t.fail(e.what());
      }
    }
    if (ph.terms().empty()) terms.fail("Hamiltonian needs at least one term");
    return to_matrix(ph);
  }
  v.fail("Hamiltonian needs one of the keys \"matrix\", \"pauli\" or \"terms\"");
}

Operator load_hamiltonian(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (path.size() >= 5 && path.substr(path.size() - 5) == ".json") ||
                    (first != std::string::npos && text[first] == '{');
  if (json) {
    const JsonDocument doc = JsonDocument::parse(text, path);
    return hamiltonian_from_json(JsonView(doc, ""));
  }
  try {
    return to_matrix(PauliHamiltonian::parse(text));
  } catch (const PauliError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Operator unitary_from_json(const JsonView& v) {
  if (!v.is_object()) v.fail("unitary must be an object");
  if (v.has("matrix")) {
    const Operator u = matrix_from_json(v.at("matrix"));
    if (u.rows() != u.cols() || unitarity_residual(u) > 1e-8) v.at("matrix").fail("matrix is not unitary");
    return u;
  }
  if (v.has("hamiltonian")) return evolution(hamiltonian_from_json(v.at("hamiltonian")), v.at("t").number());
  if (v.has("haar")) {
    const JsonView h = v.at("haar");
    const long long s = h.has("seed") ? h.at("seed").integer() : 0;
    if (s < 0) h.at("seed").fail("seed must be nonnegative");
    return haar_unitary(positive_int(h.at("d"), "d", 4096), static_cast<Seed>(s));
  }
  v.fail("unitary needs one of the keys \"matrix\", \"hamiltonian\" or \"haar\"");
}

InteractionGraph graph_from_json(const JsonView& v) {
  if (!v.is_object()) v.fail("graph must be an object");
  const int n = positive_int(v.at("n"), "n", 1 << 16);
  const JsonView edges = v.at("edges");
  if (!edges.is_array()) edges.fail("edges must be an array");
  std::vector<Edge> out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const JsonView e = edges.at(k);
    Edge edge;
    const long long i = e.at("i").integer(), j = e.at("j").integer();
    if (i < 0 || i >= n) e.at("i").fail("vertex out of range [0, n)");
    if (j < 0 || j >= n) e.at("j").fail("vertex out of range [0, n)");
    if (i == j) e.fail("self-loop on vertex " + std::to_string(i));
    edge.i = static_cast<int>(i);
    edge.j = static_cast<int>(j);
    edge.J = e.at("J").number();
    if (e.has("paulis")) edge.paulis = e.at("paulis").string();
    out.push_back(std::move(edge));
  }
  return InteractionGraph(n, std::move(out));
}

Json graph_to_json(const InteractionGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({{"i", e.i}, {"j", e.j}, {"J", e.J}, {"paulis", e.paulis}});
  return {{"n", g.n()}, {"edges", edges}};
}

Json cut_to_json(const CutResult& c) {
  Json edges = Json::array();
  for (const auto& e : c.boundary) edges.push_back({{"i", e.i}, {"j", e.j}, {"J", e.J}, {"paulis", e.paulis}});
  return {{"S", c.S}, {"boundary", edges}, {"weight", c.weight}, {"rate", c.rate}};
}

SweepConfig sweep_config_from_json(const JsonView& v) {
  if (!v.is_object()) v.fail("sweep config must be an object");
  SweepConfig cfg;
  const JsonView lat = v.at("lattice");
  cfg.lattice.rows = positive_int(lat.at("rows"), "rows", kMaxLatticeSites);
  cfg.lattice.cols = positive_int(lat.at("cols"), "cols", kMaxLatticeSites);
  if (lat.has("periodic")) cfg.lattice.periodic = lat.at("periodic").boolean();
  if (lat.has("nnn")) cfg.lattice.nnn = lat.at("nnn").boolean();
  if (lat.has("pauli_pair")) cfg.lattice.pauli_pair = lat.at("pauli_pair").string();
  try {
    (void)build_lattice(cfg.lattice);
  } catch (const std::invalid_argument& e) {
    lat.fail(e.what());
  }

  const JsonView grid = v.at("x_grid");
  if (grid.is_array()) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double x = grid.at(k).number();
      if (x < 0.0) grid.at(k).fail("x must be nonnegative");
      if (k > 0 && !(x > cfg.x_grid.back())) grid.at(k).fail("x_grid must be strictly ascending");
      cfg.x_grid.push_back(x);
    }
    if (cfg.x_grid.empty()) grid.fail("x_grid must not be empty");
  } else if (grid.is_object()) {
    const double lo = grid.at("start").number(), hi = grid.at("stop").number(), step = grid.at("step").number();
    if (lo < 0.0) grid.at("start").fail("start must be nonnegative");
    if (!(step > 0.0)) grid.at("step").fail("step must be positive");
    if (hi < lo) grid.at("stop").fail("stop must not be below start");
    cfg.x_grid = x_grid(lo, hi, step);
  } else {
    grid.fail("x_grid must be an array or a {start, stop, step} object");
  }

  const JsonView samples = v.at("samples_per_x");
  const long long s = samples.integer();
  if (s < 1) samples.fail("samples_per_x must be positive");
  if (s > 10'000'000) samples.fail("samples_per_x is unreasonably large");
  cfg.samples_per_x = static_cast<int>(s);
  if (v.has("base_seed")) {
    const long long seed = v.at("base_seed").integer();
    if (seed < 0) v.at("base_seed").fail("base_seed must be nonnegative");
    cfg.base_seed = static_cast<Seed>(seed);
  }
  if (v.has("nn_sigma")) {
    cfg.nn_sigma = v.at("nn_sigma").number();
    if (cfg.nn_sigma < 0.0) v.at("nn_sigma").fail("nn_sigma must be nonnegative");
  }
  return cfg;
}

Json sweep_config_to_json(const SweepConfig& cfg) {
  return {{"lattice",
           {{"rows", cfg.lattice.rows},
            {"cols", cfg.lattice.cols},
            {"periodic", cfg.lattice.periodic},
            {"nnn", cfg.lattice.nnn},
            {"pauli_pair", cfg.lattice.pauli_pair}}},
          {"x_grid", cfg.x_grid},
          {"samples_per_x", cfg.samples_per_x},
          {"base_seed", cfg.base_seed},
          {"nn_sigma", cfg.nn_sigma}};
}

Json rate_report_to_json(const RateReport& r) {
  return {{"rate", r.rate},
          {"inter_sector", r.inter_sector},
          {"intra_sector", r.intra_sector},
          {"eta", r.eta},
          {"bound_A", r.bound_A},
          {"bound_Aprime", r.bound_Aprime}};
}

FamilyFile family_from_json(const JsonView& v, Seed seed, Tolerances tol) {
  if (!v.is_object()) v.fail("family must be an object");
  FamilyFile out;
  FamilySpec& f = out.family;
  try {
    f.kind = parse_family_kind(v.at("kind").string());
  } catch (const std::invalid_argument& e) {
    v.at("kind").fail(e.what());
  }
  if (v.has("hamiltonian")) out.hamiltonian = hamiltonian_from_json(v.at("hamiltonian"));
  if (f.kind == FamilySpec::Kind::explicit_list) {
    const JsonView list = v.at("algebras");
    if (list.size() == 0) list.fail("explicit_list needs at least one algebra");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const JsonView item = list.at(k);
      f.algebras.push_back(algebra_from_json(item, seed, tol).algebra);
      f.labels.push_back(item.has("label") ? item.at("label").string() : std::to_string(k));
    }
    return out;
  }
  f.thetas = thetas_from_json(v.at("thetas"));
  if (f.thetas.empty()) v.at("thetas").fail("thetas must not be empty");
  for (std::size_t k = 1; k < f.thetas.size(); ++k)
    if (!(f.thetas[k] > f.thetas[k - 1])) v.at("thetas").fail("thetas must be strictly increasing");
  if (f.kind == FamilySpec::Kind::theta_grid) {
    f.base = algebra_from_json(v.at("base"), seed, tol).algebra;
    f.generator = matrix_from_json(v.at("generator"));
    if (f.generator.rows() != f.base->dim() || f.generator.cols() != f.base->dim())
      v.at("generator").fail("generator must match the base algebra dimension");
    if (hermiticity_residual(f.generator) > 1e-10 * std::max(1.0, f.generator.norm()))
      v.at("generator").fail("rotation generator must be hermitian");
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": cannot open for writing");
  f << text;
  if (!f) throw std::runtime_error(path + ": write failed");
}

}  // namespace aotoc
