#pragma once

// Semi-tensor-product algebra restricted to logical matrices, kept in
// compressed form: a logical matrix is its row count plus, for each column,
// the row holding the single 1. Row indices are stored 0-based; text dumps
// use the 1-based delta notation, e.g. d2[1,1,1,2].

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"

namespace bnpin {

class LogicalMatrix {
 public:
  LogicalMatrix() = default;

  LogicalMatrix(std::size_t rows, std::vector<std::uint32_t> cols)
      : rows_(rows), cols_(std::move(cols)) {
    for (auto r : cols_)
      if (r >= rows_) throw Error("logical matrix column points past the last row");
  }

  // From the 1-based delta listing: delta(2, {1,1,1,2}) is d2[1,1,1,2].
  static LogicalMatrix delta(std::size_t rows, std::initializer_list<std::uint32_t> one_based) {
    std::vector<std::uint32_t> cols;
    cols.reserve(one_based.size());
    for (auto i : one_based) {
      if (i == 0) throw Error("delta indices are 1-based");
      cols.push_back(i - 1);
    }
    return LogicalMatrix(rows, std::move(cols));
  }

  // Parses "d4[1,3,2,4]".
  static LogicalMatrix parse(std::string_view text) {
    if (text.empty() || text[0] != 'd') throw Error("delta text must start with 'd'");
    const auto open = text.find('[');
    if (open == std::string_view::npos || text.back() != ']') throw Error("malformed delta text");
    const std::size_t rows = std::stoul(std::string(text.substr(1, open - 1)));
    std::vector<std::uint32_t> cols;
    std::string body(text.substr(open + 1, text.size() - open - 2));
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto v = std::stoul(item);
      if (v == 0) throw Error("delta indices are 1-based");
      cols.push_back(static_cast<std::uint32_t>(v - 1));
    }
    return LogicalMatrix(rows, std::move(cols));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_.size(); }
  std::uint32_t operator[](std::size_t c) const noexcept { return cols_[c]; }
  const std::vector<std::uint32_t>& indices() const noexcept { return cols_; }

  std::string to_string() const {
    std::ostringstream os;
    os << 'd' << rows_ << '[';
    for (std::size_t c = 0; c < cols_.size(); ++c) os << (c ? "," : "") << cols_[c] + 1;
    os << ']';
    return os.str();
  }

  friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::uint32_t> cols_;
};

struct CanonicalVector {
  std::size_t order = 2;
  std::size_t index = 1;  // 1-based position of the 1-entry

  LogicalMatrix matrix() const {
    return LogicalMatrix(order, {static_cast<std::uint32_t>(index - 1)});
  }
  friend bool operator==(const CanonicalVector&, const CanonicalVector&) = default;
};

inline bool is_power_of_two(std::size_t v) { return v != 0 && std::has_single_bit(v); }

inline std::size_t log2_exact(std::size_t v) {
  if (!is_power_of_two(v)) throw Error("dimension " + std::to_string(v) + " is not a power of two");
  return static_cast<std::size_t>(std::countr_zero(v));
}

// zeta(1) = d2^1, zeta(0) = d2^2.
inline CanonicalVector zeta(bool b) { return {2, b ? std::size_t{1} : std::size_t{2}}; }

inline bool unzeta(const CanonicalVector& v) {
  if (v.order != 2) throw Error("only order-2 canonical vectors encode a bit");
  return v.index == 1;
}

inline LogicalMatrix identity(std::size_t n) {
  std::vector<std::uint32_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0U);
  return LogicalMatrix(n, std::move(cols));
}

inline LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b) {
  std::vector<std::uint32_t> cols;
  cols.reserve(a.cols() * b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      cols.push_back(static_cast<std::uint32_t>(a[i] * b.rows() + b[j]));
  return LogicalMatrix(a.rows() * b.rows(), std::move(cols));
}

// A ⋉ B = (A ⊗ I_{l/q})(B ⊗ I_{l/s}) with l = lcm(q, s), q = cols(A),
// s = rows(B). Both are powers of two here, so l = max(q, s).
inline LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b) {
  const std::size_t q = a.cols();
  const std::size_t s = b.rows();
  if (!is_power_of_two(q) || !is_power_of_two(s))
    throw Error("stp needs power-of-two inner dimensions");
  std::vector<std::uint32_t> cols;
  if (q == s) {
    cols.reserve(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(a[b[j]]);
    return LogicalMatrix(a.rows(), std::move(cols));
  }
  if (q > s) {
    // A (B ⊗ I_k): column j*k + l of B ⊗ I_k selects row B[j]*k + l.
    const std::size_t k = q / s;
    cols.reserve(b.cols() * k);
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t l = 0; l < k; ++l) cols.push_back(a[b[j] * k + l]);
    return LogicalMatrix(a.rows(), std::move(cols));
  }
  // (A ⊗ I_k) B: row r of the operand splits as (r / k, r % k).
  const std::size_t k = s / q;
  cols.reserve(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const std::size_t r = b[j];
    cols.push_back(static_cast<std::uint32_t>(a[r / k] * k + r % k));
  }
  return LogicalMatrix(a.rows() * k, std::move(cols));
}

inline CanonicalVector stp(const CanonicalVector& a, const CanonicalVector& b) {
  return {a.order * b.order, (a.index - 1) * b.order + b.index};
}

// W_[q,p]: for canonical a (order p) and b (order q), a ⋉ b = W_[q,p] ⋉ b ⋉ a.
inline LogicalMatrix swap_matrix(std::size_t q, std::size_t p) {
  if (q == 0 || p == 0) throw Error("swap matrix orders must be positive");
  std::vector<std::uint32_t> cols(q * p);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < p; ++j) cols[i * p + j] = static_cast<std::uint32_t>(j * q + i);
  return LogicalMatrix(q * p, std::move(cols));
}

// Φ_p: a ⋉ a = Φ_p ⋉ a for canonical a of order p.
inline LogicalMatrix power_reducing(std::size_t p) {
  if (p == 0) throw Error("power-reducing order must be positive");
  std::vector<std::uint32_t> cols(p);
  for (std::size_t k = 0; k < p; ++k) cols[k] = static_cast<std::uint32_t>(k * p + k);
  return LogicalMatrix(p * p, std::move(cols));
}

// I_{2^kept} ⊗ 1^T_{2^dropped}
inline LogicalMatrix collapse_matrix(std::size_t kept, std::size_t dropped) {
  std::vector<std::uint32_t> cols(std::size_t{1} << (kept + dropped));
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = static_cast<std::uint32_t>(c >> dropped);
  return LogicalMatrix(std::size_t{1} << kept, std::move(cols));
}

// Transpose of a permutation matrix.
inline LogicalMatrix transpose_permutation(const LogicalMatrix& w) {
  if (w.rows() != w.cols()) throw Error("transpose_permutation needs a square matrix");
  std::vector<std::uint32_t> cols(w.cols(), 0);
  std::vector<bool> hit(w.rows(), false);
  for (std::size_t c = 0; c < w.cols(); ++c) {
    if (hit[w[c]]) throw Error("matrix is not a permutation");
    hit[w[c]] = true;
    cols[w[c]] = static_cast<std::uint32_t>(c);
  }
  return LogicalMatrix(w.rows(), std::move(cols));
}

// 2 x 2^k structure matrix from a truth table in the shared column convention.
inline LogicalMatrix from_table(const std::vector<std::uint8_t>& table) {
  std::vector<std::uint32_t> cols(table.size());
  for (std::size_t c = 0; c < table.size(); ++c) cols[c] = table[c] ? 0U : 1U;
  return LogicalMatrix(2, std::move(cols));
}

inline std::vector<std::uint8_t> to_table(const LogicalMatrix& s) {
  if (s.rows() != 2) throw Error("structure matrix must have two rows");
  std::vector<std::uint8_t> table(s.cols());
  for (std::size_t c = 0; c < s.cols(); ++c) table[c] = s[c] == 0;
  return table;
}

inline std::size_t arity_of(const LogicalMatrix& s) { return log2_exact(s.cols()); }

// ζ(f(x)) = S_f ⋉ x_{vars[0]} ⋉ ... ⋉ x_{vars[k-1]}
inline LogicalMatrix structure_matrix(const BoolExpr& expr, const std::vector<std::size_t>& vars,
                                      std::size_t arity_cap = kDefaultArityCap) {
  const auto mentioned = syntactic_variables(expr);
  for (auto v : functional_inputs(expr, mentioned, arity_cap)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw Error("structure_matrix: variable list misses functional input " + std::to_string(v));
  }
  return from_table(truth_table(expr, vars, arity_cap));
}

// W with ⋉_{i∈vars} x_i = W (⋉_{i∈subset} x_i)(⋉_{i∈vars\subset} x_i), built
// by moving the subset variables to the front one swap matrix at a time,
// last subset element first.
inline LogicalMatrix reorder_front(const std::vector<std::size_t>& vars,
                                   const std::vector<std::size_t>& subset) {
  const std::size_t m = vars.size();
  std::vector<std::size_t> order;  // 1-based positions of subset elements in vars
  for (auto s : subset) {
    auto it = std::find(vars.begin(), vars.end(), s);
    if (it == vars.end()) throw Error("reorder_front: subset is not contained in vars");
    order.push_back(static_cast<std::size_t>(it - vars.begin()) + 1);
  }
  if (!std::is_sorted(order.begin(), order.end()) ||
      std::adjacent_find(order.begin(), order.end()) != order.end())
    throw Error("reorder_front: subset must be an ordered sublist of vars");

  const std::size_t sigma = order.size();
  LogicalMatrix w = identity(1);
  for (std::size_t i = sigma; i-- > 0;) {
    // Element i sits behind the (sigma - 1 - i) elements already moved forward.
    const std::size_t block = order[i] + (sigma - 1 - i) - 1;
    w = stp(w, swap_matrix(2, std::size_t{1} << block));
  }
  if (w.cols() < (std::size_t{1} << m)) w = kron(w, identity((std::size_t{1} << m) / w.cols()));
  return w;
}

namespace detail {

inline std::vector<std::size_t> complement_in(const std::vector<std::size_t>& vars,
                                              const std::vector<std::size_t>& drop) {
  std::vector<std::size_t> kept;
  for (auto v : vars)
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) kept.push_back(v);
  if (kept.size() + drop.size() != vars.size())
    throw Error("dropped variables must be a sublist of vars");
  return kept;
}

}  // namespace detail

// Given S over `vars` in which every variable of `drop` is non-functional,
// returns A over vars \ drop with S W = A (I ⊗ 1^T), W placing the retained
// variables first.
inline LogicalMatrix factor_nonfunctional(const LogicalMatrix& s, const std::vector<std::size_t>& vars,
                                          const std::vector<std::size_t>& drop) {
  if (s.cols() != (std::size_t{1} << vars.size()))
    throw Error("factor_nonfunctional: matrix width does not match the variable list");
  const auto kept = detail::complement_in(vars, drop);
  const LogicalMatrix sw = stp(s, reorder_front(vars, kept));
  const std::size_t block = std::size_t{1} << drop.size();
  std::vector<std::uint32_t> cols(std::size_t{1} << kept.size());
  for (std::size_t a = 0; a < cols.size(); ++a) {
    cols[a] = sw[a * block];
    for (std::size_t l = 1; l < block; ++l) {
      if (sw[a * block + l] != cols[a])
        throw InternalError("factor_nonfunctional: a dropped variable is still functional");
    }
  }
  return LogicalMatrix(s.rows(), std::move(cols));
}

// A (I ⊗ 1^T) W^T: re-expands A over vars \ drop to a matrix over vars.
inline LogicalMatrix embed_nonfunctional(const LogicalMatrix& a, const std::vector<std::size_t>& vars,
                                         const std::vector<std::size_t>& drop) {
  const auto kept = detail::complement_in(vars, drop);
  if (a.cols() != (std::size_t{1} << kept.size()))
    throw Error("embed_nonfunctional: matrix width does not match the retained variables");
  const LogicalMatrix w = reorder_front(vars, kept);
  return stp(stp(a, collapse_matrix(kept.size(), drop.size())), transpose_permutation(w));
}

// Freezes the variable at 1-based `position` to `value`.
inline LogicalMatrix restrict(const LogicalMatrix& s, std::size_t position, bool value) {
  const std::size_t m = arity_of(s);
  if (position < 1 || position > m) throw Error("restrict: position out of range");
  const std::size_t shift = m - position;  // bit of this variable in a column index
  const std::size_t low_mask = (std::size_t{1} << shift) - 1;
  const std::size_t digit = value ? 0 : 1;
  std::vector<std::uint32_t> cols(s.cols() / 2);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::size_t full = ((c & ~low_mask) << 1) | (digit << shift) | (c & low_mask);
    cols[c] = s[full];
  }
  return LogicalMatrix(s.rows(), std::move(cols));
}

}  // namespace bnpin
