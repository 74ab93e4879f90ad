#pragma once

// Network-structure digraph of a Boolean network and the graph algorithms
// used for pinned-node selection.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"

namespace bnpin {

// x_tail feeds f_head.
struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

class Digraph {
 public:
  explicit Digraph(std::size_t n = 0) : out_(n), in_(n) {}

  std::size_t size() const noexcept { return out_.size(); }

  void add_arc(std::size_t tail, std::size_t head) {
    check(tail);
    check(head);
    if (out_[tail].insert(head).second) {
      in_[head].insert(tail);
      ++arcs_;
    }
  }

  bool remove_arc(std::size_t tail, std::size_t head) {
    check(tail);
    check(head);
    if (out_[tail].erase(head) == 0) return false;
    in_[head].erase(tail);
    --arcs_;
    return true;
  }

  bool has_arc(std::size_t tail, std::size_t head) const {
    return tail < size() && out_[tail].count(head) != 0;
  }

  const std::set<std::size_t>& successors(std::size_t v) const { return out_[v]; }
  const std::set<std::size_t>& predecessors(std::size_t v) const { return in_[v]; }
  std::size_t arc_count() const noexcept { return arcs_; }

  // Sorted by (tail, head).
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(arcs_);
    for (std::size_t t = 0; t < size(); ++t)
      for (auto h : out_[t]) out.push_back({t, h});
    return out;
  }

 private:
  void check(std::size_t v) const {
    if (v >= size()) throw Error("vertex " + std::to_string(v) + " out of range");
  }

  std::vector<std::set<std::size_t>> out_;
  std::vector<std::set<std::size_t>> in_;
  std::size_t arcs_ = 0;
};

// I(f): entry (i, j) is 1 iff x_j is functional in f_i.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(std::size_t n = 0) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { bits_[i * n_ + j] = v; }

  std::vector<std::size_t> row_support(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
      if ((*this)(i, j)) out.push_back(j);
    return out;
  }

  // Boolean matrix-vector product I ×_B v.
  std::vector<std::uint8_t> boolean_product(const std::vector<std::uint8_t>& v) const {
    std::vector<std::uint8_t> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_ && !out[i]; ++j) out[i] = (*this)(i, j) && v[j];
    return out;
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

inline IncidenceMatrix incidence(const BooleanNetwork& net) {
  IncidenceMatrix m(net.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    for (auto j : net.neighbors(i)) m.set(i, j, true);
  return m;
}

// Arc i -> j for every functional input i of f_j.
inline Digraph network_structure(const BooleanNetwork& net) {
  Digraph g(net.size());
  for (std::size_t j = 0; j < net.size(); ++j)
    for (auto i : net.neighbors(j)) g.add_arc(i, j);
  return g;
}

// Same vertex numbering; keeps only arcs with both ends in `vertices`.
inline Digraph induced_subgraph(const Digraph& g, const std::vector<std::size_t>& vertices) {
  std::vector<bool> in(g.size(), false);
  for (auto v : vertices) in.at(v) = true;
  Digraph sub(g.size());
  for (auto v : vertices)
    for (auto h : g.successors(v))
      if (in[h]) sub.add_arc(v, h);
  return sub;
}

// Arcs with tail in `from` and head in `to`, sorted by (head, tail).
inline std::vector<Arc> boundary_arcs(const Digraph& g, const std::vector<std::size_t>& from,
                                      const std::vector<std::size_t>& to) {
  std::vector<bool> src(g.size(), false);
  for (auto v : from) src.at(v) = true;
  std::vector<Arc> out;
  for (auto h : to) {
    if (src.at(h)) throw Error("boundary_arcs: vertex sets overlap");
    for (auto t : g.predecessors(h))
      if (src[t]) out.push_back({t, h});
  }
  std::sort(out.begin(), out.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.head, a.tail) < std::tie(b.head, b.tail);
  });
  return out;
}

// Kahn's algorithm with the lowest ready vertex first; nullopt on a cycle.
inline std::optional<std::vector<std::size_t>> topological_order(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indeg(n);
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = g.predecessors(v).size();
    if (indeg[v] == 0) ready.insert(v);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (auto h : g.successors(v))
      if (--indeg[h] == 0) ready.insert(h);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

// A self-loop counts as a cycle.
inline bool is_acyclic(const Digraph& g) { return topological_order(g).has_value(); }

// diam(G): arc count of the longest directed path, 0 without arcs.
inline std::size_t longest_path(const Digraph& g) {
  const auto order = topological_order(g);
  if (!order) throw Error("longest_path: graph has a cycle");
  std::vector<std::size_t> depth(g.size(), 0);
  std::size_t best = 0;
  for (auto v : *order) {
    for (auto h : g.successors(v)) depth[h] = std::max(depth[h], depth[v] + 1);
    best = std::max(best, depth[v]);
  }
  return best;
}

namespace detail {

// True iff `to` is reachable from `from`.
inline bool reaches(const Digraph& g, std::size_t from, std::size_t to) {
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (auto h : g.successors(v))
      if (!seen[h]) {
        seen[h] = true;
        stack.push_back(h);
      }
  }
  return false;
}

}  // namespace detail

// Greedy vertex ordering (Eades-Lin-Smyth): peel sinks to the back and
// sources to the front, otherwise move the vertex with the largest
// out-degree minus in-degree to the front. Arcs pointing backwards in the
// final order, together with all self-loops, form the feedback arc set; a
// final pass puts back any arc whose return closes no cycle.
// Result sorted by (tail, head).
inline std::vector<Arc> feedback_arc_set(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<Arc> fas;
  Digraph work(n);
  for (const auto& a : g.arcs()) {
    if (a.tail == a.head)
      fas.push_back(a);
    else
      work.add_arc(a.tail, a.head);
  }

  std::vector<bool> alive(n, true);
  std::vector<std::size_t> indeg(n), outdeg(n);
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = work.predecessors(v).size();
    outdeg[v] = work.successors(v).size();
  }
  auto remove = [&](std::size_t v) {
    alive[v] = false;
    for (auto h : work.successors(v))
      if (alive[h]) --indeg[h];
    for (auto t : work.predecessors(v))
      if (alive[t]) --outdeg[t];
  };

  std::vector<std::size_t> front, back;  // back is built in reverse
  std::size_t remaining = n;
  while (remaining > 0) {
    bool peeled = true;
    while (peeled) {
      peeled = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (alive[v] && outdeg[v] == 0) {
          back.push_back(v);
          remove(v);
          --remaining;
          peeled = true;
        }
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (alive[v] && indeg[v] == 0) {
          front.push_back(v);
          remove(v);
          --remaining;
          peeled = true;
        }
      }
    }
    if (remaining == 0) break;
    std::size_t pick = n;
    long best = std::numeric_limits<long>::min();
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      const long delta = static_cast<long>(outdeg[v]) - static_cast<long>(indeg[v]);
      if (delta > best) {
        best = delta;
        pick = v;
      }
    }
    front.push_back(pick);
    remove(pick);
    --remaining;
  }

  std::vector<std::size_t> position(n);
  std::size_t p = 0;
  for (auto v : front) position[v] = p++;
  for (auto it = back.rbegin(); it != back.rend(); ++it) position[*it] = p++;

  std::vector<Arc> backward;
  for (const auto& a : work.arcs())
    if (position[a.tail] > position[a.head]) backward.push_back(a);
  for (const auto& a : backward) work.remove_arc(a.tail, a.head);
  for (const auto& a : backward) {
    if (detail::reaches(work, a.head, a.tail))
      fas.push_back(a);
    else
      work.add_arc(a.tail, a.head);
  }
  std::sort(fas.begin(), fas.end());
  return fas;
}

struct DiameterCut {
  std::vector<std::size_t> extra;  // newly sourced vertices outside `pinned`, ascending
  std::vector<Arc> removed;        // their (and any pinned vertex's) removed in-arcs, sorted
};

// Makes diam(G) <= bound by repeatedly sourcing (deleting every in-arc of)
// the vertex entered by the most maximal-length paths, lowest index on ties.
// Vertices in `pinned` already carry a controller, so they are sourced first
// whenever one of them lies on a maximal path.
inline DiameterCut enforce_diameter(Digraph g, const std::vector<std::size_t>& pinned,
                                    std::size_t bound) {
  const std::size_t n = g.size();
  std::vector<bool> is_pinned(n, false);
  for (auto v : pinned) is_pinned.at(v) = true;
  constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();
  auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; };
  auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
    return (a != 0 && b > kSat / a) ? kSat : a * b;
  };

  DiameterCut cut;
  for (;;) {
    const auto order = topological_order(g);
    if (!order) throw Error("enforce_diameter: graph has a cycle");
    std::vector<std::size_t> len_in(n, 0), len_out(n, 0);
    std::vector<std::uint64_t> cnt_in(n, 1), cnt_out(n, 1);
    for (auto v : *order) {
      for (auto t : g.predecessors(v)) {
        if (len_in[t] + 1 > len_in[v]) {
          len_in[v] = len_in[t] + 1;
          cnt_in[v] = cnt_in[t];
        } else if (len_in[t] + 1 == len_in[v]) {
          cnt_in[v] = sat_add(cnt_in[v], cnt_in[t]);
        }
      }
    }
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
      const auto v = *it;
      for (auto h : g.successors(v)) {
        if (len_out[h] + 1 > len_out[v]) {
          len_out[v] = len_out[h] + 1;
          cnt_out[v] = cnt_out[h];
        } else if (len_out[h] + 1 == len_out[v]) {
          cnt_out[v] = sat_add(cnt_out[v], cnt_out[h]);
        }
      }
    }
    const std::size_t diam = n == 0 ? 0 : *std::max_element(len_in.begin(), len_in.end());
    if (diam <= bound) break;

    std::size_t best_any = n, best_pinned = n;
    std::uint64_t score_any = 0, score_pinned = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (len_in[v] == 0 || len_in[v] + len_out[v] != diam) continue;
      const auto score = sat_mul(cnt_in[v], cnt_out[v]);
      if (score > score_any) {
        score_any = score;
        best_any = v;
      }
      if (is_pinned[v] && score > score_pinned) {
        score_pinned = score;
        best_pinned = v;
      }
    }
    const std::size_t v = best_pinned != n ? best_pinned : best_any;
    if (v == n) throw InternalError("enforce_diameter: no vertex on a maximal path");
    const std::vector<std::size_t> tails(g.predecessors(v).begin(), g.predecessors(v).end());
    for (auto t : tails) {
      g.remove_arc(t, v);
      cut.removed.push_back({t, v});
    }
    if (!is_pinned[v]) {
      is_pinned[v] = true;
      cut.extra.push_back(v);
    }
  }
  std::sort(cut.extra.begin(), cut.extra.end());
  std::sort(cut.removed.begin(), cut.removed.end());
  return cut;
}

// Graphviz rendering. Removed arcs are drawn dashed, pinned vertices
// double-circled. Vertex ids are 1-based (n1, n2, ...).
inline std::string to_dot(const Digraph& g, const std::vector<std::string>& labels,
                          const std::vector<Arc>& removed = {},
                          const std::vector<std::size_t>& pinned = {},
                          const std::string& graph_name = "network") {
  std::set<std::size_t> pin(pinned.begin(), pinned.end());
  std::set<Arc> cut(removed.begin(), removed.end());
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << "  n" << v + 1 << " [label=\"" << (v < labels.size() ? labels[v] : std::to_string(v + 1))
       << "\"";
    if (pin.count(v)) os << ", shape=doublecircle";
    os << "];\n";
  }
  std::set<Arc> all(cut);
  for (const auto& a : g.arcs()) all.insert(a);
  for (const auto& a : all) {
    os << "  n" << a.tail + 1 << " -> n" << a.head + 1;
    if (cut.count(a)) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bnpin
