#pragma once

// Λ-partition: split nodes into arbitrary-state and fixed-state sets and read
// off the target bits of the fixed ones.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"

namespace bnpin {

struct NodePartition {
  std::vector<std::size_t> free;   // Ξ^uf, ascending
  std::vector<std::size_t> fixed;  // Ξ^f, ascending
  std::vector<std::uint8_t> alpha; // alpha[k] is the target bit of fixed[k]

  std::size_t size() const noexcept { return free.size() + fixed.size(); }

  // Target bit of node j, which must be fixed.
  bool alpha_of(std::size_t j) const {
    auto it = std::lower_bound(fixed.begin(), fixed.end(), j);
    if (it == fixed.end() || *it != j) throw Error("node is not fixed-state");
    return alpha[static_cast<std::size_t>(it - fixed.begin())] != 0;
  }

  bool is_fixed(std::size_t j) const { return std::binary_search(fixed.begin(), fixed.end(), j); }
};

namespace detail {

// The state with bit k deleted, as a string key.
inline std::string without_bit(const StateVector& s, std::size_t k) {
  std::string key = s.to_string();
  key.erase(k, 1);
  return key;
}

}  // namespace detail

// Node k is free iff deleting bit k from the states of Λ with x_k = 0 and
// from those with x_k = 1 gives the same set. A fixed node must take a single
// value across Λ; otherwise AmbiguousTarget lists the offenders.
inline NodePartition lambda_partition(const TargetSet& target, std::size_t n) {
  if (target.size() != n) throw Error("target length does not match network size");
  NodePartition part;
  if (target.is_pattern()) {
    const auto& p = target.symbols();
    for (std::size_t k = 0; k < n; ++k) {
      if (p[k] == '*') {
        part.free.push_back(k);
      } else {
        part.fixed.push_back(k);
        part.alpha.push_back(p[k] == '1');
      }
    }
    return part;
  }

  const auto& states = target.states();
  std::vector<std::size_t> ambiguous;
  for (std::size_t k = 0; k < n; ++k) {
    std::set<std::string> zero, one;
    for (const auto& s : states) (s.get(k) ? one : zero).insert(detail::without_bit(s, k));
    if (zero == one) {
      part.free.push_back(k);
      continue;
    }
    part.fixed.push_back(k);
    if (!zero.empty() && !one.empty()) ambiguous.push_back(k);
    part.alpha.push_back(!one.empty());
  }
  if (!ambiguous.empty()) {
    std::ostringstream os;
    os << "target set is not rectangular on fixed-state nodes:";
    for (auto k : ambiguous) os << ' ' << k + 1;
    throw AmbiguousTarget(os.str(), std::move(ambiguous));
  }
  return part;
}

// Bits of `state` at the given positions, in the given order.
inline std::vector<std::uint8_t> projection(const StateVector& state,
                                            const std::vector<std::size_t>& nodes) {
  std::vector<std::uint8_t> out;
  out.reserve(nodes.size());
  for (auto j : nodes) {
    if (j >= state.size()) throw Error("projection index out of range");
    out.push_back(state.get(j));
  }
  return out;
}

// Target text: a {0,1,*} pattern of length n, or NAME=BIT pairs separated by
// commas (unnamed nodes are wildcards), or one explicit state per line.
inline TargetSet parse_target(std::string_view text, const BooleanNetwork& net) {
  std::string body;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || c == '\n') body.push_back(c);
  while (!body.empty() && body.back() == '\n') body.pop_back();
  while (!body.empty() && body.front() == '\n') body.erase(body.begin());

  if (body.find('=') != std::string::npos) {
    std::string pattern(net.size(), '*');
    std::istringstream in(body);
    std::string item;
    std::size_t col = 1;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("expected NAME=0|1", 1, col);
      const auto name = item.substr(0, eq);
      const auto value = item.substr(eq + 1);
      const auto idx = net.index_of(name);
      if (!idx) throw ParseError("undefined name '" + name + "'", 1, col);
      if (value != "0" && value != "1") throw ParseError("target bit must be 0 or 1", 1, col + eq + 1);
      if (pattern[*idx] != '*' && pattern[*idx] != value[0])
        throw ParseError("node '" + name + "' assigned twice", 1, col);
      pattern[*idx] = value[0];
      col += item.size() + 1;
    }
    return TargetSet::pattern(std::move(pattern));
  }

  if (body.find('\n') != std::string::npos) {
    std::vector<StateVector> states;
    std::istringstream in(body);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (line.size() != net.size())
        throw ParseError("state has " + std::to_string(line.size()) + " bits, expected " +
                             std::to_string(net.size()),
                         line_no, 1);
      if (line.find_first_not_of("01") != std::string::npos)
        throw ParseError("explicit states may only contain '0' and '1'", line_no,
                         line.find_first_not_of("01") + 1);
      states.push_back(StateVector::from_string(line));
    }
    return TargetSet::explicit_states(std::move(states));
  }

  if (body.size() != net.size())
    throw ParseError("pattern has " + std::to_string(body.size()) + " symbols, expected " +
                         std::to_string(net.size()),
                     1, 1);
  if (auto bad = body.find_first_not_of("01*"); bad != std::string::npos)
    throw ParseError("pattern may only contain '0', '1' and '*'", 1, bad + 1);
  return TargetSet::pattern(std::move(body));
}

}  // namespace bnpin
