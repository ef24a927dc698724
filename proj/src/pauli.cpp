#include "aotoc/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

namespace aotoc {

namespace {

constexpr Complex kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int mod4(int v) { return ((v % 4) + 4) % 4; }

// Exponent of i in sigma(x1,z1) * sigma(x2,z2) = i^g sigma(x1^x2, z1^z2).
int site_phase(int x1, int z1, int x2, int z2) {
  if (x1 == 0 && z1 == 0) return 0;
  if (x1 == 1 && z1 == 1) return z2 - x2;
  if (x1 == 1) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

std::uint64_t reverse_bits(std::uint64_t v, int n) {
  std::uint64_t out = 0;
  for (int j = 0; j < n; ++j)
    if ((v >> j) & 1ULL) out |= 1ULL << (n - 1 - j);
  return out;
}

// P |b> = value(b) |b ^ flip>
struct Monomial {
  std::uint64_t flip = 0;
  std::uint64_t sign_mask = 0;
  int phase = 0;

  explicit Monomial(const PauliString& p)
      : flip(reverse_bits(p.x, p.n)),
        sign_mask(reverse_bits(p.z, p.n)),
        phase(mod4(p.phase + std::popcount(p.x & p.z))) {}

  Complex value(std::uint64_t b) const {
    const bool negative = std::popcount(sign_mask & b) % 2 == 1;
    return negative ? -kPowI[phase] : kPowI[phase];
  }
};

void require_same_n(const PauliString& p, const PauliString& q, const char* what) {
  if (p.n != q.n)
    throw PauliError(std::string(what) + ": qubit counts differ (" + std::to_string(p.n) + " vs " +
                     std::to_string(q.n) + ")");
}

}  // namespace

int PauliString::weight() const { return std::popcount(x | z); }

char PauliString::site(int j) const {
  const bool xj = (x >> j) & 1ULL, zj = (z >> j) & 1ULL;
  if (xj && zj) return 'Y';
  if (xj) return 'X';
  if (zj) return 'Z';
  return 'I';
}

PauliString parse_pauli(std::string_view text) {
  PauliString p;
  std::string_view rest = text;
  if (rest.starts_with("+i")) {
    p.phase = 1;
    rest.remove_prefix(2);
  } else if (rest.starts_with("-i")) {
    p.phase = 3;
    rest.remove_prefix(2);
  } else if (rest.starts_with("i")) {
    p.phase = 1;
    rest.remove_prefix(1);
  } else if (rest.starts_with("-")) {
    p.phase = 2;
    rest.remove_prefix(1);
  } else if (rest.starts_with("+")) {
    rest.remove_prefix(1);
  }
  if (rest.empty()) throw PauliError("parse_pauli: empty Pauli word in '" + std::string(text) + "'");
  if (rest.size() > static_cast<std::size_t>(kMaxPauliQubits))
    throw PauliError("parse_pauli: more than 64 qubits");
  p.n = static_cast<int>(rest.size());
  for (int j = 0; j < p.n; ++j) {
    switch (rest[static_cast<std::size_t>(j)]) {
      case 'I': break;
      case 'X': p.x |= 1ULL << j; break;
      case 'Z': p.z |= 1ULL << j; break;
      case 'Y':
        p.x |= 1ULL << j;
        p.z |= 1ULL << j;
        break;
      default:
        throw PauliError("parse_pauli: invalid character '" + std::string(1, rest[static_cast<std::size_t>(j)]) +
                         "' in '" + std::string(text) + "'");
    }
  }
  return p;
}

std::string format_pauli(const PauliString& p) {
  static constexpr const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string out = kPrefix[mod4(p.phase)];
  for (int j = 0; j < p.n; ++j) out.push_back(p.site(j));
  return out;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  require_same_n(p, q, "multiply");
  int phase = p.phase + q.phase;
  for (int j = 0; j < p.n; ++j)
    phase += site_phase(static_cast<int>((p.x >> j) & 1ULL), static_cast<int>((p.z >> j) & 1ULL),
                        static_cast<int>((q.x >> j) & 1ULL), static_cast<int>((q.z >> j) & 1ULL));
  return {p.n, p.x ^ q.x, p.z ^ q.z, mod4(phase)};
}

bool commutes(const PauliString& p, const PauliString& q) {
  require_same_n(p, q, "commutes");
  return (std::popcount(p.x & q.z) + std::popcount(p.z & q.x)) % 2 == 0;
}

Operator to_matrix(const PauliString& p) {
  if (p.n > kMaxMatrixQubits) throw PauliError("to_matrix: more than 12 qubits");
  const std::uint64_t d = 1ULL << p.n;
  const Monomial m(p);
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::uint64_t b = 0; b < d; ++b)
    out(static_cast<Eigen::Index>(b ^ m.flip), static_cast<Eigen::Index>(b)) = m.value(b);
  return out;
}

// ---------------------------------------------------------------------------

StabilizerGroup StabilizerGroup::build(int n, const std::vector<PauliString>& generators) {
  if (n < 0 || n > kMaxPauliQubits) throw PauliError("stabilizer: invalid qubit count");
  for (const auto& g : generators) {
    if (g.n != n) throw PauliError("stabilizer: generator " + format_pauli(g) + " has wrong qubit count");
    if (!g.is_hermitian()) throw PauliError("stabilizer: generator " + format_pauli(g) + " is not hermitian");
    if (g.is_identity_up_to_phase())
      throw PauliError("stabilizer: generator " + format_pauli(g) + " is proportional to the identity");
  }
  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b)
      if (!commutes(generators[a], generators[b]))
        throw PauliError("stabilizer: generators " + format_pauli(generators[a]) + " and " +
                         format_pauli(generators[b]) + " anticommute");

  // Symplectic rank over GF(2).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  for (const auto& g : generators) rows.emplace_back(g.x, g.z);
  std::size_t rank = 0;
  for (int col = 0; col < 2 * n && rank < rows.size(); ++col) {
    // Columns: x bits first, then z bits.
    auto bit = [col, n](const std::pair<std::uint64_t, std::uint64_t>& r) {
      return col < n ? ((r.first >> col) & 1ULL) : ((r.second >> (col - n)) & 1ULL);
    };
    std::size_t pivot = rank;
    while (pivot < rows.size() && !bit(rows[pivot])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && bit(rows[r])) {
        rows[r].first ^= rows[rank].first;
        rows[r].second ^= rows[rank].second;
      }
    ++rank;
  }
  if (rank != generators.size()) throw PauliError("stabilizer: generators are not independent");
  if (generators.size() > 12) throw PauliError("stabilizer: more than 4096 group elements");

  StabilizerGroup group;
  group.n_ = n;
  group.generators_ = generators;
  const std::size_t count = std::size_t{1} << generators.size();
  group.elements_.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    PauliString e = PauliString::identity(n);
    for (std::size_t l = 0; l < generators.size(); ++l)
      if ((mask >> l) & 1U) e = multiply(e, generators[l]);
    if (mask != 0 && e.is_identity_up_to_phase())
      throw PauliError("stabilizer: group contains " + format_pauli(e));
    group.elements_.push_back(e);
  }
  return group;
}

StabilizerGroup StabilizerGroup::build(const std::vector<std::string>& generators) {
  std::vector<PauliString> parsed;
  for (const auto& g : generators) parsed.push_back(parse_pauli(g));
  const int n = parsed.empty() ? 0 : parsed.front().n;
  return build(n, parsed);
}

std::vector<Operator> StabilizerGroup::element_matrices() const {
  std::vector<Operator> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(to_matrix(e));
  return out;
}

Operator twirl(const StabilizerGroup& group, const Operator& x) {
  if (group.n() > kMaxMatrixQubits) throw PauliError("twirl: more than 12 qubits");
  const std::uint64_t d = 1ULL << group.n();
  if (x.rows() != static_cast<Eigen::Index>(d) || x.cols() != static_cast<Eigen::Index>(d))
    throw DimensionError("twirl: operator dimension must be 2^n");
  Operator out = Operator::Zero(x.rows(), x.cols());
  for (const auto& g : group.elements()) {
    const Monomial m(g);
    // (g X g^dagger)_{ab} = v(a^f) X_{a^f, b^f} conj(v(b^f))
    for (std::uint64_t a = 0; a < d; ++a) {
      const std::uint64_t ca = a ^ m.flip;
      const Complex va = m.value(ca);
      for (std::uint64_t b = 0; b < d; ++b) {
        const std::uint64_t cb = b ^ m.flip;
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            va * x(static_cast<Eigen::Index>(ca), static_cast<Eigen::Index>(cb)) * std::conj(m.value(cb));
      }
    }
  }
  return out / static_cast<double>(group.elements().size());
}

MatrixAlgebra group_algebra(const StabilizerGroup& group) {
  if (group.n() > 6) throw PauliError("group_algebra: dense algebra limited to 6 qubits");
  return MatrixAlgebra::from_spanning_set(group.element_matrices(), 1 << group.n());
}

// ---------------------------------------------------------------------------

void PauliHamiltonian::add(double coefficient, const PauliString& p) {
  if (!p.is_hermitian()) throw PauliError("PauliHamiltonian: term " + format_pauli(p) + " is not hermitian");
  if (terms_.empty() && n_ == 0) n_ = p.n;
  if (p.n != n_)
    throw PauliError("PauliHamiltonian: term " + format_pauli(p) + " acts on " + std::to_string(p.n) +
                     " qubits, expected " + std::to_string(n_));
  PauliString q = p;
  if (q.phase == 2) coefficient = -coefficient;
  q.phase = 0;
  terms_.push_back({coefficient, q});
}

void PauliHamiltonian::add(double coefficient, std::string_view word) { add(coefficient, parse_pauli(word)); }

PauliHamiltonian PauliHamiltonian::parse(std::string_view text) {
  PauliHamiltonian h;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coeff_text, word, extra;
    if (!(fields >> coeff_text)) continue;
    if (!(fields >> word) || (fields >> extra))
      throw PauliError("line " + std::to_string(line_no) + ": expected 'coeff PAULI_WORD'");
    double coeff = 0.0;
    const auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), coeff);
    if (ec != std::errc{} || ptr != coeff_text.data() + coeff_text.size())
      throw PauliError("line " + std::to_string(line_no) + ": invalid coefficient '" + coeff_text + "'");
    try {
      h.add(coeff, word);
    } catch (const PauliError& e) {
      throw PauliError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return h;
}

std::string PauliHamiltonian::format() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) out << t.coefficient << ' ' << format_pauli(t.pauli) << '\n';
  return out.str();
}

Operator to_matrix(const PauliHamiltonian& h) {
  if (h.n() > kMaxMatrixQubits) throw PauliError("to_matrix: more than 12 qubits");
  const std::uint64_t d = 1ULL << h.n();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& t : h.terms()) {
    const Monomial m(t.pauli);
    for (std::uint64_t b = 0; b < d; ++b)
      out(static_cast<Eigen::Index>(b ^ m.flip), static_cast<Eigen::Index>(b)) += t.coefficient * m.value(b);
  }
  return out;
}

}  // namespace aotoc
