#pragma once

// Simulation-based checks: set stabilization with stabilizing time, fixed
// points of the closed fixed-state subnetwork, attractors, and the Hamming
// inequality dist(f(μ), f(ν)) <= I(f) ×_B dist(μ, ν).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"
#include "bnpin/partition.hpp"
#include "bnpin/structure.hpp"
#include "bnpin/synthesis.hpp"

namespace bnpin {

// Hard ceiling on the exhaustive state-space size (successor table memory).
inline constexpr std::size_t kMaxExhaustiveBits = 28;

enum class VerifyMode { ExhaustiveFull, ExhaustiveSub, Sampled };

inline const char* mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::ExhaustiveFull: return "exhaustive-full";
    case VerifyMode::ExhaustiveSub: return "exhaustive-sub";
    case VerifyMode::Sampled: return "sampled";
  }
  return "?";
}

struct Budget {
  std::size_t horizon = 40;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t exhaustive_cap = 22;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::size_t max_reported = 16;
};

struct Violation {
  StateVector initial;
  std::size_t escape_time = 0;      // a time step at which the trajectory is outside Λ
  bool horizon_exhausted = false;   // no recurrence seen within the horizon
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::Sampled;
  bool pass = false;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t horizon = 0;
  std::size_t checked_states = 0;
  std::size_t tau_star = 0;                        // max observed stabilizing time
  std::optional<std::vector<std::uint8_t>> fixed_point;  // on Ξ^f, when closed and acyclic
  std::optional<std::size_t> diameter;             // of the fixed-state subgraph, when closed and acyclic
  std::optional<std::size_t> diameter_bound;       // diameter + 1
  std::size_t violation_count = 0;
  std::vector<Violation> violations;               // first max_reported, by initial-state order
};

namespace detail {

inline std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t t = requested ? requested : std::max(1U, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(t, jobs));
}

// Runs body(begin, end, worker) over [0, jobs) split into contiguous chunks.
template <class Body>
void parallel_chunks(std::size_t jobs, std::size_t threads, Body&& body) {
  const std::size_t workers = worker_count(threads, jobs);
  if (workers <= 1) {
    body(std::size_t{0}, jobs, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (jobs + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk, e = std::min(jobs, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e, w] { body(b, e, w); });
  }
  for (auto& t : pool) t.join();
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  StateVector s(n);
  for (auto& w : s.words()) w = rng();
  if (n % 64) s.words().back() &= (std::uint64_t{1} << (n % 64)) - 1;
  return s;
}

inline constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

// Stabilizing time of every state of a 2^bits space under `succ`, or kNever
// when the reached attractor leaves `good`. Iterative walk with memoization.
template <class Good>
std::vector<std::size_t> stabilizing_times(const std::vector<std::uint32_t>& succ, Good&& good) {
  const std::size_t size = succ.size();
  constexpr std::size_t kUnknown = kNever - 1;
  constexpr std::size_t kOnStack = kNever - 2;
  std::vector<std::size_t> tau(size, kUnknown);
  std::vector<std::uint32_t> path;
  for (std::size_t s0 = 0; s0 < size; ++s0) {
    if (tau[s0] != kUnknown) continue;
    path.clear();
    std::uint32_t s = static_cast<std::uint32_t>(s0);
    while (tau[s] == kUnknown) {
      tau[s] = kOnStack;
      path.push_back(s);
      s = succ[s];
    }
    std::size_t stop = path.size();
    if (tau[s] == kOnStack) {
      // New cycle: path from s onward.
      const auto it = std::find(path.begin(), path.end(), s);
      stop = static_cast<std::size_t>(it - path.begin());
      bool all_good = true;
      for (auto p = it; p != path.end(); ++p) all_good &= good(*p);
      for (auto p = it; p != path.end(); ++p) tau[*p] = all_good ? 0 : kNever;
    }
    for (std::size_t i = stop; i-- > 0;) {
      const auto u = path[i];
      const auto next = tau[succ[u]];
      if (next == kNever)
        tau[u] = kNever;
      else if (next == 0 && good(u))
        tau[u] = 0;
      else
        tau[u] = next + 1;
    }
  }
  return tau;
}

struct Trajectory {
  bool converged = false;
  bool horizon_exhausted = false;
  std::size_t tau = 0;
  std::size_t escape_time = 0;
};

// Follows one trajectory for at most `horizon` steps, stopping at the first
// recurrence. Converged iff the recurrent part lies in Λ.
template <class State, class Step, class In>
Trajectory follow(State x, std::size_t horizon, Step&& step_fn, In&& in_target) {
  std::vector<State> seen{x};
  std::vector<bool> inside{static_cast<bool>(in_target(x))};
  std::unordered_map<State, std::size_t, std::conditional_t<std::is_same_v<State, StateVector>,
                                                            StateHash, std::hash<State>>>
      when;
  when.emplace(x, 0);
  Trajectory tr;
  for (std::size_t t = 1; t <= horizon; ++t) {
    x = step_fn(x);
    auto [it, fresh] = when.emplace(x, t);
    if (!fresh) {
      const std::size_t start = it->second;
      std::size_t last_out = kNever;
      for (std::size_t s = 0; s < t; ++s)
        if (!inside[s]) last_out = s;
      bool cycle_ok = true;
      for (std::size_t s = start; s < t; ++s) cycle_ok &= static_cast<bool>(inside[s]);
      if (cycle_ok) {
        tr.converged = true;
        tr.tau = last_out == kNever ? 0 : last_out + 1;
      } else {
        for (std::size_t s = start; s < t; ++s)
          if (!inside[s]) {
            tr.escape_time = s;
            break;
          }
      }
      return tr;
    }
    seen.push_back(x);
    inside.push_back(in_target(x));
  }
  // No recurrence inside the horizon.
  std::size_t last_out = kNever;
  for (std::size_t s = 0; s < inside.size(); ++s)
    if (!inside[s]) last_out = s;
  if (last_out == horizon) {
    tr.horizon_exhausted = true;
    tr.escape_time = horizon;
  } else {
    tr.converged = true;
    tr.tau = last_out == kNever ? 0 : last_out + 1;
  }
  return tr;
}

inline std::vector<std::uint32_t> successor_table(const BooleanNetwork& net, std::size_t threads) {
  const std::size_t size = std::size_t{1} << net.size();
  std::vector<std::uint32_t> succ(size);
  parallel_chunks(size, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t s = b; s < e; ++s) succ[s] = static_cast<std::uint32_t>(step_word(net, s));
  });
  return succ;
}

}  // namespace detail

// Steady state of the closed, acyclic subnetwork on `fixed`, iterated for
// diam + 1 steps from the all-zero and all-one starts.
inline std::vector<std::uint8_t> subnetwork_fixed_point(const BooleanNetwork& net,
                                                        const std::vector<std::size_t>& fixed) {
  const BooleanNetwork sub = subnetwork(net, fixed);
  const Digraph g = network_structure(sub);
  if (!is_acyclic(g)) throw InternalError("fixed-state subnetwork is cyclic");
  const std::size_t steps = longest_path(g) + 1;
  StateVector a(sub.size()), b(sub.size());
  for (std::size_t k = 0; k < sub.size(); ++k) b.set(k, true);
  for (std::size_t t = 0; t < steps; ++t) {
    a = step(sub, a);
    b = step(sub, b);
  }
  if (a != b || step(sub, a) != a) throw InternalError("fixed-state subnetwork did not settle");
  std::vector<std::uint8_t> out(sub.size());
  for (std::size_t k = 0; k < sub.size(); ++k) out[k] = a.get(k);
  return out;
}

struct TimeBoundResult {
  bool pass = false;
  std::size_t worst_steps = 0;  // max over initial states of the first time at the fixed point
  std::size_t bound = 0;        // diam + 1
};

// Every state of the closed, acyclic subnetwork on `fixed` reaches its
// fixed point within diam + 1 steps.
inline TimeBoundResult time_bound_check(const BooleanNetwork& net, const std::vector<std::size_t>& fixed,
                                        std::size_t exhaustive_cap = 22) {
  const BooleanNetwork sub = subnetwork(net, fixed);
  const Digraph g = network_structure(sub);
  if (!is_acyclic(g)) throw Error("time_bound_check: fixed-state subnetwork is cyclic");
  if (sub.size() > std::min(exhaustive_cap, kMaxExhaustiveBits))
    throw Error("time_bound_check: subnetwork too large for exhaustive enumeration");
  TimeBoundResult r;
  r.bound = longest_path(g) + 1;
  const auto fp = subnetwork_fixed_point(net, fixed);
  std::uint64_t target = 0;
  for (std::size_t k = 0; k < fp.size(); ++k)
    if (fp[k]) target |= std::uint64_t{1} << k;
  const auto succ = detail::successor_table(sub, 1);
  const auto tau = detail::stabilizing_times(succ, [&](std::uint32_t s) { return s == target; });
  r.pass = true;
  for (auto t : tau) {
    if (t == detail::kNever) {
      r.pass = false;
      continue;
    }
    r.worst_steps = std::max(r.worst_steps, t);
  }
  r.pass = r.pass && r.worst_steps <= r.bound;
  return r;
}

// Global Λ-stabilization check. Exhaustive over all 2^n states when
// n <= exhaustive_cap; otherwise exhaustive over the closed fixed-state
// subnetwork (a proof for rectangular Λ) plus uniform random full states.
inline VerificationReport check_set_stabilization(const BooleanNetwork& net, const TargetSet& target,
                                                  const Budget& budget = {}) {
  const std::size_t n = net.size();
  if (target.size() != n) throw Error("target length does not match network size");
  if (budget.samples < 1) throw Error("sample count must be at least 1");
  VerificationReport rep;
  rep.seed = budget.seed;
  rep.horizon = budget.horizon;
  const std::size_t cap = std::min(budget.exhaustive_cap, kMaxExhaustiveBits);

  std::optional<NodePartition> part;
  try {
    part = lambda_partition(target, n);
  } catch (const AmbiguousTarget&) {
  }
  bool closed = false;
  if (part && fixed_subnetwork_closed(net, part->fixed)) {
    closed = true;
    const Digraph g = induced_subgraph(network_structure(net), part->fixed);
    if (is_acyclic(g)) {
      rep.diameter = longest_path(g);
      rep.diameter_bound = *rep.diameter + 1;
      rep.fixed_point = subnetwork_fixed_point(net, part->fixed);
    }
  }

  auto record = [&](std::vector<std::pair<std::size_t, Violation>>& found) {
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rep.violation_count += found.size();
    for (auto& [idx, v] : found) {
      if (rep.violations.size() >= budget.max_reported) break;
      rep.violations.push_back(std::move(v));
    }
  };

  if (n <= cap) {
    rep.mode = VerifyMode::ExhaustiveFull;
    const auto succ = detail::successor_table(net, budget.threads);
    const auto tau = detail::stabilizing_times(succ, [&](std::uint32_t s) {
      return member(target, StateVector::from_word(n, s));
    });
    rep.checked_states = tau.size();
    std::vector<std::pair<std::size_t, Violation>> found;
    for (std::size_t s = 0; s < tau.size(); ++s) {
      if (tau[s] != detail::kNever) {
        rep.tau_star = std::max(rep.tau_star, tau[s]);
        continue;
      }
      Violation v{StateVector::from_word(n, s), 0, false};
      if (found.size() < budget.max_reported) {
        const auto tr = detail::follow(
            static_cast<std::uint64_t>(s), succ.size(), [&](std::uint64_t x) { return std::uint64_t{succ[x]}; },
            [&](std::uint64_t x) { return member(target, StateVector::from_word(n, x)); });
        v.escape_time = tr.escape_time;
      }
      found.emplace_back(s, std::move(v));
    }
    record(found);
    rep.pass = rep.violation_count == 0;
    return rep;
  }

  rep.mode = VerifyMode::Sampled;
  if (part && closed && part->fixed.size() <= cap) {
    rep.mode = VerifyMode::ExhaustiveSub;
    const BooleanNetwork sub = subnetwork(net, part->fixed);
    std::uint64_t alpha = 0;
    for (std::size_t k = 0; k < part->fixed.size(); ++k)
      if (part->alpha[k]) alpha |= std::uint64_t{1} << k;
    const auto succ = detail::successor_table(sub, budget.threads);
    const auto tau = detail::stabilizing_times(succ, [&](std::uint32_t s) { return s == alpha; });
    rep.checked_states += tau.size();
    std::vector<std::pair<std::size_t, Violation>> found;
    for (std::size_t s = 0; s < tau.size(); ++s) {
      if (tau[s] != detail::kNever) {
        rep.tau_star = std::max(rep.tau_star, tau[s]);
        continue;
      }
      // Lift the failing subnetwork state into a full state with free nodes at 0.
      StateVector full(n);
      for (std::size_t k = 0; k < part->fixed.size(); ++k) full.set(part->fixed[k], (s >> k) & 1U);
      found.emplace_back(s, Violation{std::move(full), 0, false});
    }
    record(found);
  }

  // Uniform random full states.
  std::vector<StateVector> starts;
  starts.reserve(budget.samples);
  std::mt19937_64 rng(budget.seed);
  for (std::size_t i = 0; i < budget.samples; ++i) starts.push_back(detail::random_state(n, rng));
  rep.samples = budget.samples;
  rep.checked_states += budget.samples;

  const std::size_t workers = detail::worker_count(budget.threads, starts.size());
  std::vector<std::size_t> worst(workers, 0);
  std::vector<std::vector<std::pair<std::size_t, Violation>>> bad(workers);
  detail::parallel_chunks(starts.size(), budget.threads, [&](std::size_t b, std::size_t e, std::size_t w) {
    for (std::size_t i = b; i < e; ++i) {
      const auto tr = detail::follow(
          starts[i], budget.horizon, [&](const StateVector& x) { return step(net, x); },
          [&](const StateVector& x) { return member(target, x); });
      if (tr.converged)
        worst[w] = std::max(worst[w], tr.tau);
      else
        bad[w].emplace_back(i, Violation{starts[i], tr.escape_time, tr.horizon_exhausted});
    }
  });
  std::vector<std::pair<std::size_t, Violation>> found;
  for (std::size_t w = 0; w < workers; ++w) {
    rep.tau_star = std::max(rep.tau_star, worst[w]);
    for (auto& v : bad[w]) found.push_back(std::move(v));
  }
  record(found);
  rep.pass = rep.violation_count == 0;
  return rep;
}

// ---------------------------------------------------------------------------
using Attractor = std::vector<StateVector>;

namespace detail {

// Rotation starting at the smallest state.
inline Attractor canonical_cycle(Attractor cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

}  // namespace detail

// All attractors by exhaustive successor walk; n <= cap.
inline std::vector<Attractor> attractors(const BooleanNetwork& net, std::size_t cap = 20) {
  const std::size_t n = net.size();
  if (n > std::min(cap, kMaxExhaustiveBits))
    throw Error("attractors: network has " + std::to_string(n) + " nodes, cap is " + std::to_string(cap));
  const auto succ = detail::successor_table(net, 1);
  // 0 unvisited, 1 on the current walk, 2 done
  std::vector<std::uint8_t> mark(succ.size(), 0);
  std::vector<Attractor> out;
  std::vector<std::uint32_t> path;
  for (std::size_t s0 = 0; s0 < succ.size(); ++s0) {
    if (mark[s0]) continue;
    path.clear();
    std::uint32_t s = static_cast<std::uint32_t>(s0);
    while (mark[s] == 0) {
      mark[s] = 1;
      path.push_back(s);
      s = succ[s];
    }
    if (mark[s] == 1) {
      Attractor cycle;
      for (auto it = std::find(path.begin(), path.end(), s); it != path.end(); ++it)
        cycle.push_back(StateVector::from_word(n, *it));
      out.push_back(detail::canonical_cycle(std::move(cycle)));
    }
    for (auto p : path) mark[p] = 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Attractors reached from `samples` seeded random initial states within `horizon` steps.
inline std::vector<Attractor> sampled_attractors(const BooleanNetwork& net, std::size_t samples,
                                                 std::uint64_t seed, std::size_t horizon = 1000) {
  std::mt19937_64 rng(seed);
  std::set<Attractor> found;
  for (std::size_t i = 0; i < samples; ++i) {
    StateVector x = detail::random_state(net.size(), rng);
    std::unordered_map<StateVector, std::size_t, StateHash> when;
    std::vector<StateVector> seen;
    for (std::size_t t = 0; t <= horizon; ++t) {
      auto [it, fresh] = when.emplace(x, t);
      if (!fresh) {
        Attractor cycle(seen.begin() + static_cast<std::ptrdiff_t>(it->second), seen.end());
        found.insert(detail::canonical_cycle(std::move(cycle)));
        break;
      }
      seen.push_back(x);
      x = step(net, x);
    }
  }
  return {found.begin(), found.end()};
}

// Iterates from `start` until a fixed point, for at most `max_steps` steps.
inline std::optional<StateVector> settle(const BooleanNetwork& net, StateVector start, std::size_t max_steps) {
  for (std::size_t t = 0; t <= max_steps; ++t) {
    auto next = step(net, start);
    if (next == start) return start;
    start = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
struct HammingResult {
  bool pass = true;
  std::size_t pairs = 0;
  std::optional<std::pair<StateVector, StateVector>> counterexample;
};

namespace detail {

inline bool hamming_holds(const BooleanNetwork& net, const IncidenceMatrix& inc, const StateVector& mu,
                          const StateVector& nu) {
  const std::size_t n = net.size();
  std::vector<std::uint8_t> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = mu.get(k) != nu.get(k);
  const auto rhs = inc.boolean_product(d);
  const auto fm = step(net, mu), fn = step(net, nu);
  for (std::size_t k = 0; k < n; ++k)
    if (fm.get(k) != fn.get(k) && !rhs[k]) return false;
  return true;
}

}  // namespace detail

// Componentwise dist(f(μ), f(ν)) <= I(f) ×_B dist(μ, ν) on seeded random pairs.
inline HammingResult hamming_check(const BooleanNetwork& net, std::size_t trials, std::uint64_t seed = 1) {
  const auto inc = incidence(net);
  std::mt19937_64 rng(seed);
  HammingResult r;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto mu = detail::random_state(net.size(), rng);
    const auto nu = detail::random_state(net.size(), rng);
    ++r.pairs;
    if (!detail::hamming_holds(net, inc, mu, nu)) {
      r.pass = false;
      r.counterexample = std::make_pair(mu, nu);
      break;
    }
  }
  return r;
}

// Same inequality over every ordered pair of states; n <= 12.
inline HammingResult hamming_check_exhaustive(const BooleanNetwork& net) {
  const std::size_t n = net.size();
  if (n > 12) throw Error("hamming_check_exhaustive: network too large");
  const auto inc = incidence(net);
  HammingResult r;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < size; ++a) {
    const auto mu = StateVector::from_word(n, a);
    for (std::uint64_t b = 0; b < size; ++b) {
      const auto nu = StateVector::from_word(n, b);
      ++r.pairs;
      if (!detail::hamming_holds(net, inc, mu, nu)) {
        r.pass = false;
        r.counterexample = std::make_pair(mu, nu);
        return r;
      }
    }
  }
  return r;
}

}  // namespace bnpin
