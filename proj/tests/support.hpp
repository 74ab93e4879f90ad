#pragma once

// Shared test helpers: random networks and graphs, and brute-force oracles
// that share no code with the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bnpin/bnpin.hpp"

#ifndef BNPIN_FIXTURE_DIR
#define BNPIN_FIXTURE_DIR "fixtures"
#endif

namespace testing_support {

using bnpin::BoolExpr;
using bnpin::BooleanNetwork;
using bnpin::Digraph;

inline std::string fixture(const std::string& name) {
  std::ifstream in(std::string(BNPIN_FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BooleanNetwork tlgl() { return bnpin::parse_network(fixture("tlgl.bn")); }

inline bnpin::TargetSet tlgl_target(const BooleanNetwork& net) {
  return bnpin::parse_target(fixture("tlgl.target"), net);
}

// ---------------------------------------------------------------------------
// Random expressions and networks.

inline BoolExpr random_expr(const std::vector<std::size_t>& vars, std::mt19937_64& rng, int depth = 3) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (vars.empty()) return BoolExpr::constant(rng() & 1U);
  const int r = pick(rng);
  if (depth == 0 || r < 3) {
    BoolExpr leaf = BoolExpr::var(vars[rng() % vars.size()]);
    return (rng() & 1U) ? BoolExpr::negate(std::move(leaf)) : leaf;
  }
  if (r == 3) return BoolExpr::negate(random_expr(vars, rng, depth - 1));
  std::vector<BoolExpr> args{random_expr(vars, rng, depth - 1), random_expr(vars, rng, depth - 1)};
  if (r < 6) return BoolExpr::conj(std::move(args));
  if (r < 9) return BoolExpr::disj(std::move(args));
  return BoolExpr::exclusive(std::move(args));
}

// Rule j over a random set of at most `max_in` distinct inputs.
inline BooleanNetwork random_network(std::size_t n, std::size_t max_in, std::mt19937_64& rng) {
  std::vector<std::string> names;
  std::vector<BoolExpr> rules;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t j = 0; j < n; ++j) {
    names.push_back("x" + std::to_string(j + 1));
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t k = rng() % (std::min(max_in, n) + 1);
    std::vector<std::size_t> ins(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    rules.push_back(random_expr(ins, rng));
  }
  return BooleanNetwork(std::move(names), std::move(rules));
}

// Each node fixed with probability `p_fixed` to a random bit.
inline std::string random_pattern(std::size_t n, double p_fixed, std::mt19937_64& rng) {
  std::bernoulli_distribution fixed(p_fixed);
  std::string p(n, '*');
  for (auto& c : p)
    if (fixed(rng)) c = (rng() & 1U) ? '1' : '0';
  return p;
}

inline Digraph random_digraph(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution arc(density);
  Digraph g(n);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t h = 0; h < n; ++h)
      if (arc(rng)) g.add_arc(t, h);
  return g;
}

inline Digraph random_dag(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution arc(density);
  Digraph g(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (arc(rng)) g.add_arc(perm[a], perm[b]);
  return g;
}

// ---------------------------------------------------------------------------
// Dense 0/1 matrices and the textbook STP A ⋉ B = (A ⊗ I_{t/n})(B ⊗ I_{t/p}).

struct Dense {
  std::size_t r = 0, c = 0;
  std::vector<int> v;
  Dense(std::size_t rows, std::size_t cols) : r(rows), c(cols), v(rows * cols, 0) {}
  int& at(std::size_t i, std::size_t j) { return v[i * c + j]; }
  int at(std::size_t i, std::size_t j) const { return v[i * c + j]; }
  friend bool operator==(const Dense&, const Dense&) = default;
};

inline Dense dense(const bnpin::LogicalMatrix& m) {
  Dense d(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) d.at(m[j], j) = 1;
  return d;
}

inline Dense dense_identity(std::size_t n) {
  Dense d(n, n);
  for (std::size_t i = 0; i < n; ++i) d.at(i, i) = 1;
  return d;
}

inline Dense dense_kron(const Dense& a, const Dense& b) {
  Dense d(a.r * b.r, a.c * b.c);
  for (std::size_t i = 0; i < a.r; ++i)
    for (std::size_t j = 0; j < a.c; ++j)
      for (std::size_t k = 0; k < b.r; ++k)
        for (std::size_t l = 0; l < b.c; ++l) d.at(i * b.r + k, j * b.c + l) = a.at(i, j) * b.at(k, l);
  return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense d(a.r, b.c);
  for (std::size_t i = 0; i < a.r; ++i)
    for (std::size_t k = 0; k < a.c; ++k)
      if (a.at(i, k))
        for (std::size_t j = 0; j < b.c; ++j) d.at(i, j) += a.at(i, k) * b.at(k, j);
  return d;
}

inline Dense dense_stp(const Dense& a, const Dense& b) {
  const std::size_t t = std::lcm(a.c, b.r);
  return dense_mul(dense_kron(a, dense_identity(t / a.c)), dense_kron(b, dense_identity(t / b.r)));
}

inline bnpin::LogicalMatrix random_logical(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::vector<std::uint32_t> idx(cols);
  for (auto& i : idx) i = static_cast<std::uint32_t>(rng() % rows);
  return bnpin::LogicalMatrix(rows, std::move(idx));
}

// ---------------------------------------------------------------------------
// Graph oracles.

// Longest path in arcs by exhaustive DFS over simple paths; small DAGs only.
inline std::size_t brute_longest_path(const Digraph& g) {
  std::size_t best = 0;
  std::vector<std::size_t> stack;
  auto dfs = [&](auto&& self, std::size_t v, std::size_t len) -> void {
    best = std::max(best, len);
    for (auto w : g.successors(v)) self(self, w, len + 1);
  };
  for (std::size_t v = 0; v < g.size(); ++v) dfs(dfs, v, 0);
  return best;
}

// Acyclic iff repeatedly deleting in-degree-zero vertices empties the graph.
inline bool brute_acyclic(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<bool> gone(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    bool progress = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (gone[v]) continue;
      bool source = true;
      for (auto u : g.predecessors(v)) source &= gone[u];
      if (source) {
        gone[v] = true;
        progress = true;
      }
    }
    if (!progress) break;
  }
  return std::all_of(gone.begin(), gone.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------------------
// Dynamics oracles.

// Stabilizing time of a full state space, or -1 if some attractor leaves the pattern.
inline long brute_tau_star(const BooleanNetwork& net, const std::string& pattern) {
  const std::size_t n = net.size();
  auto in = [&](std::uint64_t s) {
    for (std::size_t k = 0; k < n; ++k)
      if (pattern[k] != '*' && ((s >> k) & 1U) != static_cast<std::uint64_t>(pattern[k] == '1')) return false;
    return true;
  };
  auto next = [&](std::uint64_t s) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bnpin::StateVector sv = bnpin::StateVector::from_word(n, s);
      if (bnpin::eval(net.rule(j), sv)) out |= std::uint64_t{1} << j;
    }
    return out;
  };
  const std::uint64_t size = std::uint64_t{1} << n;
  long worst = 0;
  for (std::uint64_t s0 = 0; s0 < size; ++s0) {
    // Run past any transient (at most 2^n steps), then walk the cycle.
    std::vector<std::uint64_t> traj{s0};
    for (std::uint64_t t = 0; t < size; ++t) traj.push_back(next(traj.back()));
    const std::uint64_t on_cycle = traj.back();
    std::uint64_t x = on_cycle;
    do {
      if (!in(x)) return -1;
      x = next(x);
    } while (x != on_cycle);
    long last_out = -1;
    for (std::size_t t = 0; t < traj.size(); ++t)
      if (!in(traj[t])) last_out = static_cast<long>(t);
    worst = std::max(worst, last_out + 1);
  }
  return worst;
}

}  // namespace testing_support
