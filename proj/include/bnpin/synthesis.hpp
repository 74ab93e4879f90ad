#pragma once

// Pinned-node selection in three parts, target-matrix construction and the
// coupling equations that turn each target into a distributed state-feedback
// controller u_j = φ_j(in-neighbors) coupled as u_j ⊕_j f_j.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"
#include "bnpin/partition.hpp"
#include "bnpin/stp.hpp"
#include "bnpin/structure.hpp"

namespace bnpin {

enum class Coupling { And, Or, Xor };

inline const char* coupling_name(Coupling c) {
  switch (c) {
    case Coupling::And: return "AND";
    case Coupling::Or: return "OR";
    case Coupling::Xor: return "XOR";
  }
  return "?";
}

// M_⊕ with ζ(u ⊕ f) = M_⊕ ⋉ ζ(u) ⋉ ζ(f).
inline LogicalMatrix coupling_matrix(Coupling c) {
  switch (c) {
    case Coupling::And: return LogicalMatrix::delta(2, {1, 2, 2, 2});
    case Coupling::Or: return LogicalMatrix::delta(2, {1, 1, 1, 2});
    case Coupling::Xor: return LogicalMatrix::delta(2, {2, 1, 1, 2});
  }
  throw Error("unknown coupling");
}

struct CouplingSolution {
  Coupling coupling = Coupling::Or;
  LogicalMatrix phi;  // S_φ, same width as S_f
};

// Solves M_⊕ S_φ (I ⊗ S_f) Φ = target column by column. OR needs f <= g and
// takes φ = g where f = 0, 0 elsewhere; AND needs g <= f and takes φ = g;
// XOR always works with φ = g xor f.
inline CouplingSolution solve_coupling(const LogicalMatrix& s_f, const LogicalMatrix& target) {
  if (s_f.rows() != 2 || target.rows() != 2 || s_f.cols() != target.cols())
    throw Error("solve_coupling: S_f and target must both be 2 x 2^k with equal width");
  const auto f = to_table(s_f);
  const auto g = to_table(target);
  bool or_ok = true, and_ok = true;
  for (std::size_t c = 0; c < f.size(); ++c) {
    or_ok &= !(f[c] && !g[c]);
    and_ok &= !(g[c] && !f[c]);
  }
  std::vector<std::uint8_t> phi(f.size());
  CouplingSolution out;
  if (or_ok) {
    out.coupling = Coupling::Or;
    for (std::size_t c = 0; c < f.size(); ++c) phi[c] = !f[c] && g[c];
  } else if (and_ok) {
    out.coupling = Coupling::And;
    phi = g;
  } else {
    out.coupling = Coupling::Xor;
    for (std::size_t c = 0; c < f.size(); ++c) phi[c] = f[c] ^ g[c];
  }
  out.phi = from_table(phi);
  return out;
}

// Widest controller input count for which the residual is evaluated through
// the full matrix chain; (I ⊗ S_f) Φ has 4^k columns.
inline constexpr std::size_t kResidualChainCap = 10;

// Columns where M_⊕ S_φ (I ⊗ S_f) Φ differs from `target`.
inline std::size_t coupling_residual(Coupling coupling, const LogicalMatrix& s_phi,
                                     const LogicalMatrix& s_f, const LogicalMatrix& target) {
  if (s_phi.cols() != s_f.cols() || s_f.cols() != target.cols())
    throw Error("coupling_residual: width mismatch");
  const auto m = coupling_matrix(coupling);
  const std::size_t k = arity_of(s_f);
  LogicalMatrix lhs;
  if (k <= kResidualChainCap) {
    const std::size_t width = std::size_t{1} << k;
    lhs = stp(stp(stp(m, s_phi), kron(identity(width), s_f)), power_reducing(width));
  } else {
    std::vector<std::uint32_t> cols(s_f.cols());
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = m[s_phi[c] * 2 + s_f[c]];
    lhs = LogicalMatrix(2, std::move(cols));
  }
  std::size_t bad = 0;
  for (std::size_t c = 0; c < target.cols(); ++c) bad += lhs[c] != target[c];
  return bad;
}

// Two-level sum of products over the functional variables of `table`
// (indexed by `vars`); constants and single literals are collapsed.
inline BoolExpr sum_of_products(const std::vector<std::uint8_t>& table,
                                const std::vector<std::size_t>& vars) {
  const std::size_t k = vars.size();
  const auto live = functional_positions(table, k);
  if (live.empty()) return BoolExpr::constant(table[0] != 0);
  const auto reduced = project_table(table, k, live);
  const std::size_t m = live.size();
  if (m == 1) {
    auto v = BoolExpr::var(vars[live[0]]);
    return reduced[0] ? v : BoolExpr::negate(v);
  }
  std::vector<BoolExpr> terms;
  for (std::size_t c = 0; c < reduced.size(); ++c) {
    if (!reduced[c]) continue;
    std::vector<BoolExpr> lits;
    for (std::size_t q = 0; q < m; ++q) {
      auto v = BoolExpr::var(vars[live[q]]);
      lits.push_back(column_value(c, q, m) ? v : BoolExpr::negate(v));
    }
    terms.push_back(BoolExpr::conj(std::move(lits)));
  }
  return terms.size() == 1 ? std::move(terms[0]) : BoolExpr::disj(std::move(terms));
}

// ---------------------------------------------------------------------------
struct PartSelection {
  std::vector<std::size_t> nodes;  // ascending
  std::vector<Arc> arcs;           // sorted
};

struct PinnedTarget {
  std::size_t node = 0;
  std::vector<std::size_t> retained;  // Ñ_j
  std::vector<std::size_t> dropped;   // Ñ^c_j
  LogicalMatrix target;               // Ã_j over retained
  bool overwritten = false;           // α-column forced to ζ(α_j)
};

struct PinningPlan {
  NodePartition partition;
  PartSelection part1;
  PartSelection part2;                 // feedback arcs plus diameter cuts
  std::vector<Arc> diameter_arcs;      // subset of part2.arcs from the τ bound
  std::vector<std::size_t> part3;
  std::optional<std::size_t> tau;
  std::vector<PinnedTarget> targets;   // one per pinned node, ascending

  std::vector<std::size_t> pinned() const {
    std::set<std::size_t> all(part1.nodes.begin(), part1.nodes.end());
    all.insert(part2.nodes.begin(), part2.nodes.end());
    all.insert(part3.begin(), part3.end());
    return {all.begin(), all.end()};
  }

  std::vector<Arc> removed_arcs() const {
    std::set<Arc> all(part1.arcs.begin(), part1.arcs.end());
    all.insert(part2.arcs.begin(), part2.arcs.end());
    return {all.begin(), all.end()};
  }
};

struct Controller {
  std::size_t node = 0;
  std::vector<std::size_t> inputs;  // N_j
  Coupling coupling = Coupling::Or;
  LogicalMatrix s_f;                // original dynamics over inputs
  LogicalMatrix s_phi;              // feedback over inputs
  LogicalMatrix target;             // Ã_j embedded over inputs
  BoolExpr phi;
};

struct SynthesisResult {
  PinningPlan plan;
  BooleanNetwork controlled;
  std::vector<Controller> controllers;  // ascending by node
};

// Part I: heads of the arcs entering the fixed-state set from outside.
inline PartSelection select_part1(const Digraph& g, const NodePartition& part) {
  PartSelection sel;
  sel.arcs = boundary_arcs(g, part.free, part.fixed);
  std::set<std::size_t> heads;
  for (const auto& a : sel.arcs) heads.insert(a.head);
  sel.nodes.assign(heads.begin(), heads.end());
  std::sort(sel.arcs.begin(), sel.arcs.end());
  return sel;
}

// Part II on the fixed-state subgraph with the Part I arcs gone: a feedback
// arc set, then, if τ is given, extra in-arc cuts until diam <= τ - 1.
// `already_pinned` vertices are preferred for the diameter cuts.
inline PartSelection select_part2(const Digraph& g, const NodePartition& part,
                                  std::optional<std::size_t> tau,
                                  const std::vector<std::size_t>& already_pinned = {},
                                  std::vector<Arc>* diameter_arcs = nullptr) {
  if (tau && *tau < 1) throw Error("stabilizing-time bound must be at least 1");
  Digraph sub = induced_subgraph(g, part.fixed);
  PartSelection sel;
  sel.arcs = feedback_arc_set(sub);
  for (const auto& a : sel.arcs) sub.remove_arc(a.tail, a.head);
  if (tau) {
    std::set<std::size_t> pinned(already_pinned.begin(), already_pinned.end());
    for (const auto& a : sel.arcs) pinned.insert(a.head);
    auto cut = enforce_diameter(sub, {pinned.begin(), pinned.end()}, *tau - 1);
    if (diameter_arcs) *diameter_arcs = cut.removed;
    sel.arcs.insert(sel.arcs.end(), cut.removed.begin(), cut.removed.end());
    std::sort(sel.arcs.begin(), sel.arcs.end());
  }
  std::set<std::size_t> heads;
  for (const auto& a : sel.arcs) heads.insert(a.head);
  sel.nodes.assign(heads.begin(), heads.end());
  return sel;
}

namespace detail {

// Column of a function over `vars` selected by the target bits.
inline std::size_t alpha_column(const std::vector<std::size_t>& vars, const NodePartition& part) {
  std::size_t c = 0;
  for (auto v : vars) c = (c << 1) | (part.alpha_of(v) ? 0U : 1U);
  return c;
}

}  // namespace detail

// Part III: fixed-state nodes outside Parts I-II whose dynamics do not keep
// their target bit when every input sits at its own target bit.
inline std::vector<std::size_t> select_part3(const BooleanNetwork& net, const NodePartition& part,
                                             const std::vector<std::size_t>& already_pinned) {
  std::vector<std::size_t> out;
  for (auto j : part.fixed) {
    if (std::binary_search(already_pinned.begin(), already_pinned.end(), j)) continue;
    const auto& nb = net.neighbors(j);
    for (auto i : nb)
      if (!part.is_fixed(i))
        throw InternalError("node " + std::to_string(j + 1) + " still reads a free node");
    const bool value = net.table(j)[detail::alpha_column(nb, part)] != 0;
    if (value != part.alpha_of(j)) out.push_back(j);
  }
  return out;
}

// Ã_j over the retained inputs. Each way of freezing the dropped inputs to
// constants is tried; a restriction that keeps α_j at the target column is
// preferred, then more functional retained inputs, then enumeration order.
// Without any such restriction, the best one has its α-column overwritten.
inline PinnedTarget build_target(std::size_t j, const BooleanNetwork& net, const NodePartition& part,
                                 const std::vector<std::size_t>& dropped_tails) {
  PinnedTarget out;
  out.node = j;
  const auto& nb = net.neighbors(j);
  std::vector<std::size_t> positions;  // 1-based, ascending
  for (std::size_t p = 0; p < nb.size(); ++p) {
    if (std::binary_search(dropped_tails.begin(), dropped_tails.end(), nb[p])) {
      out.dropped.push_back(nb[p]);
      positions.push_back(p + 1);
    } else {
      out.retained.push_back(nb[p]);
    }
  }
  for (auto i : out.retained)
    if (!part.is_fixed(i))
      throw InternalError("node " + std::to_string(j + 1) + " keeps an input from a free node");

  const bool alpha_j = part.alpha_of(j);
  const std::size_t alpha_col = detail::alpha_column(out.retained, part);
  const LogicalMatrix s_f = from_table(net.table(j));
  const std::size_t sigma = positions.size();

  std::optional<LogicalMatrix> best_ok, best_any;
  std::size_t score_ok = 0, score_any = 0;
  for (std::size_t a = 0; a < (std::size_t{1} << sigma); ++a) {
    LogicalMatrix m = s_f;
    for (std::size_t i = sigma; i-- > 0;) m = restrict(m, positions[i], (a >> (sigma - 1 - i)) & 1U);
    const std::size_t score = functional_positions(to_table(m), out.retained.size()).size();
    if (!best_any || score > score_any) {
      best_any = m;
      score_any = score;
    }
    if ((m[alpha_col] == 0) == alpha_j && (!best_ok || score > score_ok)) {
      best_ok = m;
      score_ok = score;
    }
  }
  if (best_ok) {
    out.target = *best_ok;
  } else {
    auto cols = best_any->indices();
    cols[alpha_col] = alpha_j ? 0U : 1U;
    out.target = LogicalMatrix(2, std::move(cols));
    out.overwritten = true;
  }
  return out;
}

// Controller realizing `target` (embedded over N_j) for node j.
inline Controller design_controller(std::size_t j, const BooleanNetwork& net,
                                    const PinnedTarget& target) {
  Controller c;
  c.node = j;
  c.inputs = net.neighbors(j);
  c.s_f = from_table(net.table(j));
  c.target = embed_nonfunctional(target.target, c.inputs, target.dropped);
  auto sol = solve_coupling(c.s_f, c.target);
  c.coupling = sol.coupling;
  c.s_phi = std::move(sol.phi);
  c.phi = sum_of_products(to_table(c.s_phi), c.inputs);
  if (coupling_residual(c.coupling, c.s_phi, c.s_f, c.target) != 0)
    throw InternalError("coupling equation has a nonzero residual for node " + std::to_string(j + 1));
  return c;
}

// φ_j ⊕_j f_j as a rule expression.
inline BoolExpr controlled_rule(const Controller& c, const BoolExpr& original) {
  std::vector<BoolExpr> args{c.phi, original};
  switch (c.coupling) {
    case Coupling::And: return BoolExpr::conj(std::move(args));
    case Coupling::Or: return BoolExpr::disj(std::move(args));
    case Coupling::Xor: return BoolExpr::exclusive(std::move(args));
  }
  throw Error("unknown coupling");
}

// True iff no fixed-state node reads a free node.
inline bool fixed_subnetwork_closed(const BooleanNetwork& net, const std::vector<std::size_t>& fixed) {
  std::vector<bool> in(net.size(), false);
  for (auto j : fixed) in[j] = true;
  for (auto j : fixed)
    for (auto i : net.neighbors(j))
      if (!in[i]) return false;
  return true;
}

struct SynthesisOptions {
  std::optional<std::size_t> tau;
  std::size_t arity_cap = kDefaultArityCap;
};

inline SynthesisResult synthesize(const BooleanNetwork& net, const TargetSet& target,
                                  const SynthesisOptions& options = {}) {
  SynthesisResult out;
  PinningPlan& plan = out.plan;
  plan.tau = options.tau;
  plan.partition = lambda_partition(target, net.size());
  const auto& part = plan.partition;

  Digraph g = network_structure(net);
  plan.part1 = select_part1(g, part);
  for (const auto& a : plan.part1.arcs) g.remove_arc(a.tail, a.head);
  plan.part2 = select_part2(g, part, options.tau, plan.part1.nodes, &plan.diameter_arcs);

  std::set<std::size_t> first_two(plan.part1.nodes.begin(), plan.part1.nodes.end());
  first_two.insert(plan.part2.nodes.begin(), plan.part2.nodes.end());
  plan.part3 = select_part3(net, part, {first_two.begin(), first_two.end()});

  const auto removed = plan.removed_arcs();
  std::vector<BoolExpr> rules = net.rules();
  for (auto j : plan.pinned()) {
    std::vector<std::size_t> tails;
    for (const auto& a : removed)
      if (a.head == j) tails.push_back(a.tail);
    std::sort(tails.begin(), tails.end());
    plan.targets.push_back(build_target(j, net, part, tails));
    out.controllers.push_back(design_controller(j, net, plan.targets.back()));
    rules[j] = controlled_rule(out.controllers.back(), net.rule(j));
  }
  out.controlled = BooleanNetwork(net.names(), std::move(rules), options.arity_cap);

  if (!fixed_subnetwork_closed(out.controlled, part.fixed))
    throw InternalError("controlled fixed-state subnetwork still reads free nodes");
  const Digraph sub = induced_subgraph(network_structure(out.controlled), part.fixed);
  if (!is_acyclic(sub)) throw InternalError("controlled fixed-state subgraph is cyclic");
  if (options.tau && longest_path(sub) + 1 > *options.tau)
    throw InternalError("controlled fixed-state subgraph exceeds the diameter bound");
  return out;
}

// diam of the controlled fixed-state subgraph.
inline std::size_t controlled_diameter(const BooleanNetwork& controlled,
                                       const std::vector<std::size_t>& fixed) {
  return longest_path(induced_subgraph(network_structure(controlled), fixed));
}

}  // namespace bnpin
