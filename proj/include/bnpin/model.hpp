#pragma once

// Boolean-network representation: expression trees, packed states, the rule
// file grammar and semantic (truth-table) input detection.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "bnpin/error.hpp"

namespace bnpin {

inline constexpr std::size_t kDefaultArityCap = 24;

// ---------------------------------------------------------------------------
// Column convention shared with the logical-matrix algebra: for a function of
// `arity` ordered variables, column 0 is the all-true assignment and the first
// variable is the most significant digit.
inline bool column_value(std::size_t column, std::size_t position,
                         std::size_t arity) {
  return ((column >> (arity - 1 - position)) & 1U) == 0;
}

// ---------------------------------------------------------------------------
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  // Bit k of `word` is the state of node k.
  static StateVector from_word(std::size_t n, std::uint64_t word) {
    StateVector s(n);
    if (n > 0) s.words_[0] = n >= 64 ? word : word & ((std::uint64_t{1} << n) - 1);
    return s;
  }

  // Character k of `bits` is the state of node k ('0' or '1').
  static StateVector from_string(std::string_view bits) {
    StateVector s(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
      if (bits[k] == '1')
        s.set(k, true);
      else if (bits[k] != '0')
        throw Error("state string may only contain '0' and '1'");
    }
    return s;
  }

  std::size_t size() const noexcept { return n_; }

  bool get(std::size_t k) const noexcept { return (words_[k >> 6] >> (k & 63)) & 1U; }

  void set(std::size_t k, bool v) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (k & 63);
    if (v)
      words_[k >> 6] |= mask;
    else
      words_[k >> 6] &= ~mask;
  }

  // Only meaningful for n <= 64.
  std::uint64_t to_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const {
    std::string out(n_, '0');
    for (std::size_t k = 0; k < n_; ++k)
      if (get(k)) out[k] = '1';
    return out;
  }

  std::size_t popcount() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

  friend bool operator==(const StateVector&, const StateVector&) = default;
  friend auto operator<=>(const StateVector& a, const StateVector& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const StateVector& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
    for (auto w : s.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// ---------------------------------------------------------------------------
class BoolExpr {
 public:
  enum class Kind { Const, Var, Not, And, Or, Xor };

  BoolExpr() = default;

  static BoolExpr constant(bool v) {
    BoolExpr e;
    e.kind_ = Kind::Const;
    e.value_ = v;
    return e;
  }
  static BoolExpr var(std::size_t index) {
    BoolExpr e;
    e.kind_ = Kind::Var;
    e.var_ = index;
    return e;
  }
  static BoolExpr negate(BoolExpr a) {
    BoolExpr e;
    e.kind_ = Kind::Not;
    e.args_.push_back(std::move(a));
    return e;
  }
  static BoolExpr conj(std::vector<BoolExpr> args) { return nary(Kind::And, std::move(args)); }
  static BoolExpr disj(std::vector<BoolExpr> args) { return nary(Kind::Or, std::move(args)); }
  static BoolExpr exclusive(std::vector<BoolExpr> args) { return nary(Kind::Xor, std::move(args)); }

  Kind kind() const noexcept { return kind_; }
  bool value() const noexcept { return value_; }
  std::size_t variable() const noexcept { return var_; }
  const std::vector<BoolExpr>& args() const noexcept { return args_; }

  // `bit(i)` returns the value of variable i.
  template <class Lookup>
  bool evaluate(Lookup&& bit) const {
    switch (kind_) {
      case Kind::Const: return value_;
      case Kind::Var: return static_cast<bool>(bit(var_));
      case Kind::Not: return !args_[0].evaluate(bit);
      case Kind::And:
        for (const auto& a : args_)
          if (!a.evaluate(bit)) return false;
        return true;
      case Kind::Or:
        for (const auto& a : args_)
          if (a.evaluate(bit)) return true;
        return false;
      case Kind::Xor: {
        bool acc = false;
        for (const auto& a : args_) acc ^= a.evaluate(bit);
        return acc;
      }
    }
    return false;
  }

  // Copy with every variable index passed through `map`.
  template <class Map>
  BoolExpr remap(Map&& map) const {
    BoolExpr e = *this;
    if (kind_ == Kind::Var) e.var_ = map(var_);
    for (auto& a : e.args_) a = a.remap(map);
    return e;
  }

  friend bool operator==(const BoolExpr&, const BoolExpr&) = default;

 private:
  static BoolExpr nary(Kind k, std::vector<BoolExpr> args) {
    BoolExpr e;
    e.kind_ = k;
    e.args_ = std::move(args);
    return e;
  }

  Kind kind_ = Kind::Const;
  bool value_ = false;
  std::size_t var_ = 0;
  std::vector<BoolExpr> args_;
};

inline bool eval(const BoolExpr& expr, const StateVector& state) {
  return expr.evaluate([&](std::size_t i) { return state.get(i); });
}

// Variables mentioned anywhere in the tree, ascending.
inline std::vector<std::size_t> syntactic_variables(const BoolExpr& expr) {
  std::set<std::size_t> seen;
  std::function<void(const BoolExpr&)> walk = [&](const BoolExpr& e) {
    if (e.kind() == BoolExpr::Kind::Var) seen.insert(e.variable());
    for (const auto& a : e.args()) walk(a);
  };
  walk(expr);
  return {seen.begin(), seen.end()};
}

// Truth table of `expr` over the ordered variable list `vars`, one byte per
// column in the shared column convention. Variables of `expr` outside `vars`
// read as 0.
inline std::vector<std::uint8_t> truth_table(const BoolExpr& expr,
                                             const std::vector<std::size_t>& vars,
                                             std::size_t arity_cap = kDefaultArityCap) {
  const std::size_t k = vars.size();
  if (k > arity_cap)
    throw ArityError("rule has " + std::to_string(k) + " inputs, cap is " +
                     std::to_string(arity_cap));
  std::unordered_map<std::size_t, std::size_t> position;
  for (std::size_t p = 0; p < k; ++p) position.emplace(vars[p], p);
  // Positions past k are never read as true.
  const BoolExpr local = expr.remap([&](std::size_t v) {
    auto it = position.find(v);
    return it == position.end() ? k : it->second;
  });
  std::vector<std::uint8_t> table(std::size_t{1} << k);
  for (std::size_t c = 0; c < table.size(); ++c) {
    table[c] = local.evaluate([&](std::size_t p) { return p < k && column_value(c, p, k); });
  }
  return table;
}

// Positions p (into the table's variable list) on which the table depends.
inline std::vector<std::size_t> functional_positions(const std::vector<std::uint8_t>& table,
                                                     std::size_t arity) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < arity; ++p) {
    const std::size_t mask = std::size_t{1} << (arity - 1 - p);
    for (std::size_t c = 0; c < table.size(); ++c) {
      if ((c & mask) == 0 && table[c] != table[c | mask]) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

// Projects a table over `arity` variables onto the kept positions (ascending).
// The dropped positions must be non-functional.
inline std::vector<std::uint8_t> project_table(const std::vector<std::uint8_t>& table,
                                               std::size_t arity,
                                               const std::vector<std::size_t>& kept) {
  const std::size_t m = kept.size();
  std::vector<std::uint8_t> out(std::size_t{1} << m);
  for (std::size_t c = 0; c < out.size(); ++c) {
    std::size_t full = 0;  // dropped positions read as true (digit 0)
    for (std::size_t q = 0; q < m; ++q) {
      if (!column_value(c, q, m)) full |= std::size_t{1} << (arity - 1 - kept[q]);
    }
    out[c] = table[full];
  }
  return out;
}

// Indices j from `candidates` such that flipping x_j flips the output for some
// assignment; ascending.
inline std::vector<std::size_t> functional_inputs(const BoolExpr& expr,
                                                  std::vector<std::size_t> candidates,
                                                  std::size_t arity_cap = kDefaultArityCap) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  const auto table = truth_table(expr, candidates, arity_cap);
  std::vector<std::size_t> out;
  for (auto p : functional_positions(table, candidates.size())) out.push_back(candidates[p]);
  return out;
}

inline std::vector<std::size_t> functional_inputs(const BoolExpr& expr,
                                                  std::size_t arity_cap = kDefaultArityCap) {
  return functional_inputs(expr, syntactic_variables(expr), arity_cap);
}

// ---------------------------------------------------------------------------
inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.';
  });
}

class BooleanNetwork {
 public:
  BooleanNetwork() = default;

  BooleanNetwork(std::vector<std::string> names, std::vector<BoolExpr> rules,
                 std::size_t arity_cap = kDefaultArityCap)
      : names_(std::move(names)), rules_(std::move(rules)) {
    if (names_.size() != rules_.size())
      throw Error("network needs one rule per node");
    const std::size_t n = names_.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (!index_.emplace(names_[j], j).second)
        throw Error("duplicate node name '" + names_[j] + "'");
    }
    neighbors_.resize(n);
    tables_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto vars = syntactic_variables(rules_[j]);
      for (auto v : vars) {
        if (v >= n)
          throw Error("rule of node '" + names_[j] + "' references node index " +
                      std::to_string(v) + " outside the network");
      }
      const auto full = truth_table(rules_[j], vars, arity_cap);
      const auto positions = functional_positions(full, vars.size());
      for (auto p : positions) neighbors_[j].push_back(vars[p]);
      tables_[j] = project_table(full, vars.size(), positions);
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t j) const { return names_[j]; }
  const BoolExpr& rule(std::size_t j) const { return rules_[j]; }
  const std::vector<BoolExpr>& rules() const noexcept { return rules_; }

  // N_j: semantically functional inputs of rule j, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t j) const { return neighbors_[j]; }

  // Truth table of rule j over neighbors(j) in the shared column convention.
  const std::vector<std::uint8_t>& table(std::size_t j) const { return tables_[j]; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Next state of node j given the current state.
  bool next(std::size_t j, const StateVector& state) const {
    std::size_t column = 0;
    for (auto i : neighbors_[j]) column = (column << 1) | (state.get(i) ? 0U : 1U);
    return tables_[j][column] != 0;
  }

  bool next_word(std::size_t j, std::uint64_t state) const {
    std::size_t column = 0;
    for (auto i : neighbors_[j]) column = (column << 1) | (((state >> i) & 1U) ^ 1U);
    return tables_[j][column] != 0;
  }

 private:
  std::vector<std::string> names_;
  std::vector<BoolExpr> rules_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::vector<std::uint8_t>> tables_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Synchronous update.
inline StateVector step(const BooleanNetwork& net, const StateVector& state) {
  if (state.size() != net.size()) throw Error("state length does not match network size");
  StateVector out(net.size());
  for (std::size_t j = 0; j < net.size(); ++j) out.set(j, net.next(j, state));
  return out;
}

// Packed variant for n <= 64; bit k is node k.
inline std::uint64_t step_word(const BooleanNetwork& net, std::uint64_t state) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < net.size(); ++j)
    if (net.next_word(j, state)) out |= std::uint64_t{1} << j;
  return out;
}

// Subnetwork on `nodes` (ascending); their rules may only read each other.
// Node k of the result is nodes[k].
inline BooleanNetwork subnetwork(const BooleanNetwork& net, const std::vector<std::size_t>& nodes) {
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < nodes.size(); ++k) local.emplace(nodes[k], k);
  std::vector<std::string> names;
  std::vector<BoolExpr> rules;
  for (auto j : nodes) {
    // Restrict to the semantic table so syntactic mentions of outside nodes vanish.
    const auto& nb = net.neighbors(j);
    for (auto i : nb) {
      if (!local.count(i))
        throw Error("node '" + net.name(j) + "' reads '" + net.name(i) +
                    "', which is outside the subnetwork");
    }
    names.push_back(net.name(j));
    rules.push_back(net.rule(j).remap([&](std::size_t v) {
      auto it = local.find(v);
      return it == local.end() ? nodes.size() : it->second;
    }));
  }
  // Out-of-range placeholders only occur at non-functional positions; replace
  // them by building from the projected tables instead.
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    bool stray = false;
    for (auto v : syntactic_variables(rules[k])) stray |= v >= nodes.size();
    if (!stray) continue;
    const auto j = nodes[k];
    const auto& nb = net.neighbors(j);
    const auto& table = net.table(j);
    std::vector<BoolExpr> terms;
    for (std::size_t c = 0; c < table.size(); ++c) {
      if (!table[c]) continue;
      std::vector<BoolExpr> lits;
      for (std::size_t p = 0; p < nb.size(); ++p) {
        auto v = BoolExpr::var(local.at(nb[p]));
        lits.push_back(column_value(c, p, nb.size()) ? v : BoolExpr::negate(v));
      }
      terms.push_back(BoolExpr::conj(std::move(lits)));
    }
    rules[k] = BoolExpr::disj(std::move(terms));
  }
  return BooleanNetwork(std::move(names), std::move(rules));
}

// ---------------------------------------------------------------------------
// Target set: a {0,1,*} pattern or an explicit list of distinct states.
class TargetSet {
 public:
  static TargetSet pattern(std::string symbols) {
    for (char c : symbols)
      if (c != '0' && c != '1' && c != '*')
        throw Error("target pattern may only contain '0', '1' and '*'");
    TargetSet t;
    t.data_ = std::move(symbols);
    return t;
  }

  static TargetSet explicit_states(std::vector<StateVector> states) {
    if (states.empty()) throw Error("explicit target set must be nonempty");
    const auto n = states.front().size();
    std::set<StateVector> seen;
    for (const auto& s : states) {
      if (s.size() != n) throw Error("explicit target states differ in length");
      if (!seen.insert(s).second) throw Error("explicit target set lists a state twice");
    }
    TargetSet t;
    t.data_ = std::move(states);
    return t;
  }

  bool is_pattern() const noexcept { return std::holds_alternative<std::string>(data_); }
  const std::string& symbols() const { return std::get<std::string>(data_); }
  const std::vector<StateVector>& states() const { return std::get<std::vector<StateVector>>(data_); }

  std::size_t size() const {
    return is_pattern() ? symbols().size() : states().front().size();
  }

 private:
  std::variant<std::string, std::vector<StateVector>> data_;
};

inline bool member(const TargetSet& target, const StateVector& state) {
  if (target.size() != state.size()) throw Error("state length does not match target");
  if (target.is_pattern()) {
    const auto& p = target.symbols();
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] != '*' && (p[k] == '1') != state.get(k)) return false;
    }
    return true;
  }
  const auto& states = target.states();
  return std::find(states.begin(), states.end(), state) != states.end();
}

// ---------------------------------------------------------------------------
// Rule file grammar, one node per line:  NAME , EXPR
// EXPR over ! & ^ | ( ) 0 1 NAME with precedence ! > & > ^ > |.
// '#' starts a comment. A leading BoolNet "targets, factors" header is skipped.
namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, std::size_t col0,
             const std::unordered_map<std::string, std::size_t>& names)
      : text_(text), line_(line), col0_(col0), names_(names) {}

  BoolExpr parse() {
    auto e = parse_or();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, col0_ + pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BoolExpr parse_or() {
    std::vector<BoolExpr> terms{parse_xor()};
    while (accept('|')) terms.push_back(parse_xor());
    return terms.size() == 1 ? std::move(terms[0]) : BoolExpr::disj(std::move(terms));
  }

  BoolExpr parse_xor() {
    std::vector<BoolExpr> terms{parse_and()};
    while (accept('^')) terms.push_back(parse_and());
    return terms.size() == 1 ? std::move(terms[0]) : BoolExpr::exclusive(std::move(terms));
  }

  BoolExpr parse_and() {
    std::vector<BoolExpr> terms{parse_unary()};
    while (accept('&')) terms.push_back(parse_unary());
    return terms.size() == 1 ? std::move(terms[0]) : BoolExpr::conj(std::move(terms));
  }

  BoolExpr parse_unary() {
    if (accept('!')) return BoolExpr::negate(parse_unary());
    return parse_primary();
  }

  BoolExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expression ends unexpectedly");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = parse_or();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '.'))
        ++pos_;
      const std::string word(text_.substr(start, pos_ - start));
      if (word == "0" || word == "1") return BoolExpr::constant(word == "1");
      if (!is_identifier(word)) {
        pos_ = start;
        fail("malformed name '" + word + "'");
      }
      auto it = names_.find(word);
      if (it == names_.end()) {
        pos_ = start;
        fail("undefined name '" + word + "'");
      }
      return BoolExpr::var(it->second);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t col0_;
  const std::unordered_map<std::string, std::size_t>& names_;
  std::size_t pos_ = 0;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline BooleanNetwork parse_network(std::string_view text,
                                    std::size_t arity_cap = kDefaultArityCap) {
  struct Pending {
    std::size_t line;
    std::size_t expr_col;  // 0-based column where the expression text starts
    std::string expr;
  };
  std::vector<std::string> names;
  std::vector<Pending> pending;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t line_no = 0;
  std::size_t start = 0;
  bool first_content = true;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (detail::trim(raw).empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto comma = raw.find(',');
    if (comma == std::string_view::npos) {
      const auto lead = raw.find_first_not_of(" \t");
      throw ParseError("expected 'NAME , EXPR'", line_no, lead + 1);
    }
    const auto name = detail::trim(raw.substr(0, comma));
    const auto expr_text = raw.substr(comma + 1);
    if (first_content) {
      first_content = false;
      std::string lower_name(name), lower_expr(detail::trim(expr_text));
      for (auto& ch : lower_name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      for (auto& ch : lower_expr) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (lower_name == "targets" && lower_expr == "factors") {
        if (end == text.size()) break;
        continue;
      }
    }
    const auto name_col = raw.find_first_not_of(" \t") + 1;
    if (!is_identifier(name)) throw ParseError("malformed node name '" + std::string(name) + "'", line_no, name_col);
    if (name == "0" || name == "1") throw ParseError("node name may not be a constant", line_no, name_col);
    if (!index.emplace(std::string(name), names.size()).second)
      throw ParseError("duplicate definition of node '" + std::string(name) + "'", line_no, name_col);
    names.emplace_back(name);
    pending.push_back({line_no, comma + 1, std::string(expr_text)});
    if (end == text.size()) break;
  }

  std::vector<BoolExpr> rules;
  rules.reserve(pending.size());
  for (const auto& p : pending) {
    if (detail::trim(p.expr).empty()) throw ParseError("missing expression", p.line, p.expr_col + 1);
    rules.push_back(detail::ExprParser(p.expr, p.line, p.expr_col, index).parse());
  }
  return BooleanNetwork(std::move(names), std::move(rules), arity_cap);
}

// ---------------------------------------------------------------------------
namespace detail {

inline int precedence(const BoolExpr& e) {
  switch (e.kind()) {
    case BoolExpr::Kind::Or: return e.args().empty() ? 5 : 1;
    case BoolExpr::Kind::Xor: return e.args().empty() ? 5 : 2;
    case BoolExpr::Kind::And: return e.args().empty() ? 5 : 3;
    case BoolExpr::Kind::Not: return 4;
    default: return 5;
  }
}

inline void format_into(std::ostream& os, const BoolExpr& e,
                        const std::function<std::string(std::size_t)>& name) {
  auto child = [&](const BoolExpr& c, int parent) {
    if (precedence(c) < parent) {
      os << '(';
      format_into(os, c, name);
      os << ')';
    } else {
      format_into(os, c, name);
    }
  };
  auto joined = [&](const char* op, bool empty_value) {
    if (e.args().empty()) {
      os << (empty_value ? '1' : '0');
      return;
    }
    if (e.args().size() == 1) {
      // Parenthesize so a singleton keeps its own precedence level.
      child(e.args()[0], 5);
      return;
    }
    const int p = precedence(e);
    for (std::size_t i = 0; i < e.args().size(); ++i) {
      if (i) os << ' ' << op << ' ';
      child(e.args()[i], p);
    }
  };
  switch (e.kind()) {
    case BoolExpr::Kind::Const: os << (e.value() ? '1' : '0'); break;
    case BoolExpr::Kind::Var: os << name(e.variable()); break;
    case BoolExpr::Kind::Not:
      os << '!';
      child(e.args()[0], 4);
      break;
    case BoolExpr::Kind::And: joined("&", true); break;
    case BoolExpr::Kind::Or: joined("|", false); break;
    case BoolExpr::Kind::Xor: joined("^", false); break;
  }
}

}  // namespace detail

// Renders in the rule grammar; `name(i)` supplies variable labels.
inline std::string format_expr(const BoolExpr& expr,
                               const std::function<std::string(std::size_t)>& name) {
  std::ostringstream os;
  detail::format_into(os, expr, name);
  return os.str();
}

inline std::string format_expr(const BoolExpr& expr, const BooleanNetwork& net) {
  return format_expr(expr, [&](std::size_t i) { return net.name(i); });
}

// Writes the network back in the rule grammar.
inline std::string emit_network(const BooleanNetwork& net) {
  std::ostringstream os;
  for (std::size_t j = 0; j < net.size(); ++j)
    os << net.name(j) << ", " << format_expr(net.rule(j), net) << '\n';
  return os.str();
}

}  // namespace bnpin
