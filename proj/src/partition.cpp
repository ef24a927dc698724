#include "aotoc/partition.hpp"

#include "aotoc/parallel.hpp"
#include "aotoc/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aotoc {

namespace {

bool is_pauli_letter(char c) { return c == 'X' || c == 'Y' || c == 'Z'; }

std::vector<char> membership(int n, const std::vector<int>& S, const char* what) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v : S) {
    if (v < 0 || v >= n) throw GraphError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
    if (in[static_cast<std::size_t>(v)]) throw GraphError(std::string(what) + ": repeated vertex " + std::to_string(v));
    in[static_cast<std::size_t>(v)] = 1;
  }
  if (S.empty() || static_cast<int>(S.size()) == n)
    throw GraphError(std::string(what) + ": S must be a proper nonempty subset");
  return in;
}

std::vector<int> complement(int n, const std::vector<int>& S) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v : S) in[static_cast<std::size_t>(v)] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

std::vector<int> from_mask(std::uint64_t mask) {
  std::vector<int> s;
  for (int v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1U) s.push_back(v);
  return s;
}

// Components of the graph restricted to edges with J != 0.
std::vector<std::vector<int>> components(const InteractionGraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.n()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& e : g.edges())
    if (e.weight() > 0.0) {
      const int a = find(e.i), b = find(e.j);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) by_root[static_cast<std::size_t>(find(v))].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

}  // namespace

bool Edge::is_ising() const { return paulis.size() == 2 && is_pauli_letter(paulis[0]) && is_pauli_letter(paulis[1]); }

InteractionGraph::InteractionGraph(int n_vertices, std::vector<Edge> edges) : n_(n_vertices), edges_(std::move(edges)) {
  if (n_ < 1) throw GraphError("graph needs at least one vertex");
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    Edge& e = edges_[k];
    const std::string where = "edge " + std::to_string(k);
    if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_) throw GraphError(where + ": vertex out of range");
    if (e.i == e.j) throw GraphError(where + ": self-loop on vertex " + std::to_string(e.i));
    if (!std::isfinite(e.J)) throw GraphError(where + ": coupling is not finite");
    if (e.i > e.j) {
      std::swap(e.i, e.j);
      if (e.is_ising()) std::swap(e.paulis[0], e.paulis[1]);
    }
  }
}

void InteractionGraph::set_coupling(std::size_t edge, double J) {
  if (edge >= edges_.size()) throw GraphError("set_coupling: edge index out of range");
  if (!std::isfinite(J)) throw GraphError("set_coupling: coupling is not finite");
  edges_[edge].J = J;
}

bool InteractionGraph::all_ising() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_ising(); });
}

std::uint64_t subset_mask(const std::vector<int>& S) {
  std::uint64_t m = 0;
  for (int v : S) {
    if (v < 0 || v >= 64) throw GraphError("subset_mask: vertex outside [0, 64)");
    m |= std::uint64_t{1} << v;
  }
  return m;
}

bool mask_less(const std::vector<int>& a, const std::vector<int>& b) {
  // Both ascending: walk from the top.
  auto ia = a.rbegin(), ib = b.rbegin();
  for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib)
    if (*ia != *ib) return *ia < *ib;
  return ia == a.rend() && ib != b.rend();
}

std::vector<int> canonical_side(int n, const std::vector<int>& S) {
  std::vector<int> s = S;
  std::sort(s.begin(), s.end());
  std::vector<int> c = complement(n, s);
  if (c.size() < s.size() || (c.size() == s.size() && mask_less(c, s))) return c;
  return s;
}

std::vector<Edge> boundary(const InteractionGraph& g, const std::vector<int>& S) {
  const auto in = membership(g.n(), S, "boundary");
  std::vector<Edge> out;
  for (const auto& e : g.edges())
    if (in[static_cast<std::size_t>(e.i)] != in[static_cast<std::size_t>(e.j)]) out.push_back(e);
  return out;
}

CutResult cut(const InteractionGraph& g, const std::vector<int>& S) {
  CutResult r;
  r.boundary = boundary(g, S);
  for (const auto& e : r.boundary) r.weight += e.weight();
  r.rate = std::sqrt(r.weight);
  r.S = canonical_side(g.n(), S);
  return r;
}

CutResult ising_rate(const InteractionGraph& g, const std::vector<int>& S) {
  if (!g.all_ising()) throw GraphError("ising_rate: graph has non-Ising edges; use the dense rate instead");
  return cut(g, S);
}

CutResult stoer_wagner(const InteractionGraph& g) {
  const int n = g.n();
  if (n < 2) throw GraphError("stoer_wagner: need at least two vertices");

  const auto comps = components(g);
  if (comps.size() > 1) {
    const std::vector<int>* best = nullptr;
    for (const auto& c : comps)
      if (2 * static_cast<int>(c.size()) <= n && (best == nullptr || mask_less(c, *best))) best = &c;
    return cut(g, *best);
  }

  std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const auto& e : g.edges()) {
    w[static_cast<std::size_t>(e.i)][static_cast<std::size_t>(e.j)] += e.weight();
    w[static_cast<std::size_t>(e.j)][static_cast<std::size_t>(e.i)] += e.weight();
  }
  std::vector<std::vector<int>> group(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) group[static_cast<std::size_t>(v)] = {v};
  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);

  // Every cut-of-phase is a candidate; they are re-scored below by summing
  // boundary edges in edge-list order, the same sums brute force uses.
  std::vector<std::vector<int>> candidates;
  while (active.size() > 1) {
    const std::size_t m = active.size();
    std::vector<double> key(m, 0.0);
    std::vector<char> added(m, 0);
    std::size_t prev = 0, last = 0;
    for (std::size_t step = 0; step < m; ++step) {
      std::size_t pick = m;
      for (std::size_t k = 0; k < m; ++k)
        if (!added[k] && (pick == m || key[k] > key[pick])) pick = k;  // lowest index on ties
      added[pick] = 1;
      prev = last;
      last = pick;
      for (std::size_t k = 0; k < m; ++k)
        if (!added[k])
          key[k] += w[static_cast<std::size_t>(active[pick])][static_cast<std::size_t>(active[k])];
    }
    const int s = active[prev], t = active[last];
    auto members = group[static_cast<std::size_t>(t)];
    std::sort(members.begin(), members.end());
    candidates.push_back(std::move(members));
    for (int v : active) {
      w[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)];
      w[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] = w[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
    }
    w[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = 0.0;
    auto& gs = group[static_cast<std::size_t>(s)];
    gs.insert(gs.end(), group[static_cast<std::size_t>(t)].begin(), group[static_cast<std::size_t>(t)].end());
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(last));
  }

  std::optional<CutResult> best;
  for (const auto& c : candidates) {
    CutResult r = cut(g, c);
    if (!best || r.weight < best->weight || (r.weight == best->weight && mask_less(r.S, best->S))) best = std::move(r);
  }
  return *best;
}

std::vector<CutResult> brute_force_mincut(const InteractionGraph& g, std::optional<int> size_constraint, int threads) {
  const int n = g.n();
  if (n < 2) throw GraphError("brute_force_mincut: need at least two vertices");
  std::vector<std::uint64_t> masks;
  if (size_constraint) {
    const int k = *size_constraint;
    if (n > kMaxBruteForceConstrained) throw GraphError("brute_force_mincut: constrained search limited to 24 vertices");
    if (k < 1 || k >= n) throw GraphError("brute_force_mincut: size constraint must be in [1, n)");
    const std::uint64_t top = std::uint64_t{1} << (n - 1);
    // Gosper's hack over all k-subsets; for k = n/2 keep one side of each cut.
    for (std::uint64_t m = (std::uint64_t{1} << k) - 1; m < (std::uint64_t{1} << n);) {
      if (!(2 * k == n && (m & top))) masks.push_back(m);
      const std::uint64_t c = m & (~m + 1), r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
  } else {
    if (n > kMaxBruteForce) throw GraphError("brute_force_mincut: unconstrained search limited to 20 vertices");
    // Vertex n-1 stays on the complement side: 2^(n-1) - 1 distinct cuts.
    const std::uint64_t count = (std::uint64_t{1} << (n - 1)) - 1;
    masks.reserve(count);
    for (std::uint64_t m = 1; m <= count; ++m) masks.push_back(m);
  }

  const auto& edges = g.edges();
  std::vector<double> weights(masks.size());
  parallel_for(masks.size(), threads, [&](std::size_t idx) {
    const std::uint64_t m = masks[idx];
    double s = 0.0;
    for (const auto& e : edges)
      if (((m >> e.i) & 1U) != ((m >> e.j) & 1U)) s += e.weight();
    weights[idx] = s;
  });
  const double lo = *std::min_element(weights.begin(), weights.end());
  const double tol = 1e-12 * std::max(1.0, lo);
  std::vector<CutResult> out;
  for (std::size_t idx = 0; idx < masks.size(); ++idx)
    if (weights[idx] <= lo + tol) out.push_back(cut(g, from_mask(masks[idx])));
  std::sort(out.begin(), out.end(), [](const CutResult& a, const CutResult& b) { return mask_less(a.S, b.S); });
  return out;
}

PauliHamiltonian to_pauli_hamiltonian(const InteractionGraph& g, const std::vector<int>& order) {
  const int n = g.n();
  if (n > kMaxPauliQubits) throw GraphError("to_pauli_hamiltonian: too many vertices");
  std::vector<int> pos = order;
  if (pos.empty()) {
    pos.resize(static_cast<std::size_t>(n));
    std::iota(pos.begin(), pos.end(), 0);
  }
  if (static_cast<int>(pos.size()) != n) throw GraphError("to_pauli_hamiltonian: order has wrong length");
  PauliHamiltonian h(n);
  for (const auto& e : g.edges()) {
    if (!e.is_ising()) throw GraphError("to_pauli_hamiltonian: edge label '" + e.paulis + "' is not a Pauli pair");
    std::string word(static_cast<std::size_t>(n), 'I');
    word[static_cast<std::size_t>(pos[static_cast<std::size_t>(e.i)])] = e.paulis[0];
    word[static_cast<std::size_t>(pos[static_cast<std::size_t>(e.j)])] = e.paulis[1];
    h.add(e.J, word);
  }
  return h;
}

double dense_cut_rate(const InteractionGraph& g, const std::vector<int>& S) {
  const int n = g.n();
  if (n > kMaxMatrixQubits) throw GraphError("dense_cut_rate: limited to 12 qubits");
  const auto in = membership(n, S, "dense_cut_rate");
  // Put S on the leading qubits so that it is the first tensor factor.
  std::vector<int> order(static_cast<std::size_t>(n));
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (in[static_cast<std::size_t>(v)]) order[static_cast<std::size_t>(v)] = next++;
  for (int v = 0; v < n; ++v)
    if (!in[static_cast<std::size_t>(v)]) order[static_cast<std::size_t>(v)] = next++;
  const Operator h = to_matrix(to_pauli_hamiltonian(g, order));
  const int k = static_cast<int>(S.size());
  return rate_bipartite(h, {1 << k, 1 << (n - k)});
}

}  // namespace aotoc
