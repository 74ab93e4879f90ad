// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace bnpin;
namespace ts = testing_support;

namespace {

// Pinned limits.
constexpr double kGoldenSeconds = 1.0;
constexpr double kControlledSeconds = 10.0;
constexpr double kScaleSeconds = 5.0;
constexpr long kScaleMemoryKiB = 1024L * 1024L;
constexpr std::size_t kTlglSamples = 10000;
constexpr std::size_t kTlglHorizon = 40;
constexpr std::uint64_t kSeed = 20240611;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

long peak_rss_kib() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

std::vector<std::size_t> zero_based(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> out;
  for (auto j : one_based) out.push_back(j - 1);
  return out;
}

std::vector<Arc> arcs(std::initializer_list<std::pair<std::size_t, std::size_t>> one_based) {
  std::vector<Arc> out;
  for (auto [t, h] : one_based) out.push_back({t - 1, h - 1});
  return out;
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) note << "failed: ";
      else note << "; ";
      note << what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << title;
  const auto note = o.note.str();
  if (!note.empty()) std::cout << "  (" << note << ")";
  std::cout << "\n";
  failures += o.pass ? 0 : 1;
}

}  // namespace

int main() {
  criterion(1, "T-LGL partition and pinned-node selection", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto net = ts::tlgl();
    const auto target = ts::tlgl_target(net);
    const auto r = synthesize(net, target);
    const double dt = seconds_since(t0);
    const auto& p = r.plan;
    o.require(p.partition.fixed == zero_based({1, 9, 11, 14, 15}), "fixed set");
    o.require(p.partition.alpha == std::vector<std::uint8_t>{1, 1, 0, 0, 0}, "alpha");
    o.require(p.part1.nodes == zero_based({11, 15}), "part I nodes");
    o.require(p.part1.arcs == arcs({{10, 11}, {16, 15}}), "part I arcs");
    o.require(p.part2.nodes == zero_based({1, 9}), "part II nodes");
    o.require(p.part2.arcs == arcs({{1, 1}, {9, 9}}), "part II arcs");
    o.require(p.part3.empty(), "part III empty");
    o.require(p.pinned() == zero_based({1, 9, 11, 15}), "pinned set");
    o.require(dt < kGoldenSeconds, "runtime " + std::to_string(dt) + " s");
    o.note << (o.pass ? "" : "; ") << "runtime " << dt << " s";
  });

  criterion(2, "T-LGL controlled network stabilizes to the target", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto net = ts::tlgl();
    const auto target = ts::tlgl_target(net);
    const auto r = synthesize(net, target);
    const auto& fixed = r.plan.partition.fixed;
    o.require(subnetwork_fixed_point(r.controlled, fixed) == std::vector<std::uint8_t>{1, 1, 0, 0, 0},
              "subnetwork fixed point");
    const auto sub_attractors = attractors(subnetwork(r.controlled, fixed));
    o.require(sub_attractors.size() == 1 && sub_attractors[0].size() == 1, "unique subnetwork fixed point");
    const auto fp = settle(r.controlled, StateVector(net.size()), 200);
    o.require(fp && fp->to_string() == "11111111110000000110011100000", "full fixed point");
    const auto tb = time_bound_check(r.controlled, fixed);
    o.require(tb.pass && tb.worst_steps <= tb.bound, "2^5 subnetwork within diam+1");
    Budget b;
    b.samples = kTlglSamples;
    b.horizon = kTlglHorizon;
    b.seed = kSeed;
    const auto rep = check_set_stabilization(r.controlled, target, b);
    o.require(rep.pass && rep.violation_count == 0, "sampled full states");
    o.require(rep.samples == kTlglSamples, "sample count");
    const double dt = seconds_since(t0);
    o.require(dt < kControlledSeconds, "runtime");
    o.note << (o.pass ? "" : "; ") << "tau*=" << rep.tau_star << ", bound " << tb.bound << ", runtime " << dt
           << " s";
  });

  criterion(3, "Node-15 controller", [](Outcome& o) {
    const auto net = ts::tlgl();
    const auto r = synthesize(net, ts::tlgl_target(net));
    const Controller* c = nullptr;
    std::size_t k = 0;
    for (; k < r.controllers.size(); ++k)
      if (r.controllers[k].node == 14) {
        c = &r.controllers[k];
        break;
      }
    o.require(c != nullptr, "controller present");
    if (!c) return;
    o.require(c->s_f == LogicalMatrix::delta(2, {1, 1, 1, 2}), "S_f");
    o.require(r.plan.targets[k].target == LogicalMatrix::delta(2, {1, 2}), "reduced target");
    o.require(c->coupling == Coupling::And, "coupling");
    o.require(c->phi == BoolExpr::var(10), "phi = x11");
    o.require(c->s_phi.cols() == 4, "four columns");
    o.require(coupling_residual(c->coupling, c->s_phi, c->s_f, c->target) == 0, "residual");
  });

  criterion(4, "Random networks stabilize after synthesis", [](Outcome& o) {
    std::mt19937_64 rng(kSeed);
    std::size_t bad = 0, bound_bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng() % 10;
      const auto net = ts::random_network(n, 3, rng);
      const auto pattern = ts::random_pattern(n, 0.5, rng);
      const auto r = synthesize(net, TargetSet::pattern(pattern));
      const auto rep = check_set_stabilization(r.controlled, TargetSet::pattern(pattern));
      if (rep.mode != VerifyMode::ExhaustiveFull || !rep.pass) ++bad;
      const auto diam = controlled_diameter(r.controlled, r.plan.partition.fixed);
      if (rep.tau_star > diam + 1) ++bound_bad;
    }
    o.require(bad == 0, std::to_string(bad) + " unstable instances");
    o.require(bound_bad == 0, std::to_string(bound_bad) + " instances over diam+1");
  });

  criterion(5, "STP identities and compressed product", [](Outcome& o) {
    auto canonical = [](std::size_t order, std::size_t index) {
      ts::Dense d(order, 1);
      d.at(index - 1, 0) = 1;
      return d;
    };
    std::size_t bad = 0;
    for (std::size_t p = 1; p <= 16; ++p) {
      const auto phi = ts::dense(power_reducing(p));
      for (std::size_t i = 1; i <= p; ++i) {
        const auto a = canonical(p, i);
        bad += !(ts::dense_stp(phi, a) == ts::dense_stp(a, a));
      }
      for (std::size_t q = 1; q <= 16; ++q) {
        const auto w = ts::dense(swap_matrix(q, p));
        for (std::size_t i = 1; i <= p; ++i)
          for (std::size_t j = 1; j <= q; ++j) {
            const auto a = canonical(p, i), b = canonical(q, j);
            bad += !(ts::dense_stp(ts::dense_stp(w, b), a) == ts::dense_stp(a, b));
          }
      }
    }
    o.require(bad == 0, std::to_string(bad) + " identity mismatches");
    std::mt19937_64 rng(kSeed);
    std::size_t stp_bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t q = std::size_t{1} << (rng() % 7);
      const std::size_t s = std::size_t{1} << (rng() % 7);
      const auto a = ts::random_logical(std::size_t{1} << (rng() % 4), q, rng);
      const auto b = ts::random_logical(s, std::size_t{1} << (rng() % 7), rng);
      stp_bad += !(ts::dense(stp(a, b)) == ts::dense_stp(ts::dense(a), ts::dense(b)));
    }
    o.require(stp_bad == 0, std::to_string(stp_bad) + " product mismatches");
  });

  criterion(6, "Nonfunctional-variable factorization round trip", [](Outcome& o) {
    std::mt19937_64 rng(kSeed);
    std::size_t bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<std::size_t> pool{0, 1, 2, 3, 4, 5, 6, 7};
      std::shuffle(pool.begin(), pool.end(), rng);
      const std::size_t live = rng() % 4, pad = rng() % 4;
      std::vector<std::size_t> live_vars(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(live));
      std::vector<std::size_t> drop(pool.begin() + static_cast<std::ptrdiff_t>(live),
                                    pool.begin() + static_cast<std::ptrdiff_t>(live + pad));
      std::vector<std::size_t> vars = live_vars;
      vars.insert(vars.end(), drop.begin(), drop.end());
      std::sort(vars.begin(), vars.end());
      std::sort(drop.begin(), drop.end());
      const auto s = structure_matrix(ts::random_expr(live_vars, rng), vars);
      bad += !(embed_nonfunctional(factor_nonfunctional(s, vars, drop), vars, drop) == s);
    }
    o.require(bad == 0, std::to_string(bad) + " mismatches");
  });

  criterion(7, "Hamming-distance inequality, exhaustive pairs", [](Outcome& o) {
    std::mt19937_64 rng(kSeed);
    std::size_t bad = 0, pairs = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto net = ts::random_network(1 + rng() % 8, 3, rng);
      const auto r = hamming_check_exhaustive(net);
      bad += !r.pass;
      pairs += r.pairs;
    }
    o.require(bad == 0, std::to_string(bad) + " violating networks");
    o.note << (o.pass ? "" : "; ") << pairs << " pairs";
  });

  criterion(8, "Synthesis with tau = 1", [](Outcome& o) {
    std::mt19937_64 rng(kSeed);
    std::size_t nonconst = 0, bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng() % 10;
      const auto net = ts::random_network(n, 3, rng);
      const auto pattern = ts::random_pattern(n, 0.5, rng);
      const auto r = synthesize(net, TargetSet::pattern(pattern), {1});
      for (auto j : r.plan.partition.fixed) nonconst += !r.controlled.neighbors(j).empty();
      const auto rep = check_set_stabilization(r.controlled, TargetSet::pattern(pattern));
      bad += !(rep.pass && rep.tau_star <= 1);
    }
    o.require(nonconst == 0, std::to_string(nonconst) + " non-constant fixed-state rules");
    o.require(bad == 0, std::to_string(bad) + " instances with tau* > 1");
  });

  criterion(9, "Synthesis at n = 1000", [](Outcome& o) {
    std::mt19937_64 rng(kSeed);
    const std::size_t n = 1000, fixed = 50;
    const auto net = ts::random_network(n, 4, rng);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::string pattern(n, '*');
    for (std::size_t i = 0; i < fixed; ++i) pattern[idx[i]] = (rng() & 1U) ? '1' : '0';
    const auto t0 = Clock::now();
    const auto r = synthesize(net, TargetSet::pattern(pattern));
    const double dt = seconds_since(t0);
    const long rss = peak_rss_kib();
    o.require(r.plan.partition.fixed.size() == fixed, "fixed-set size");
    o.require(fixed_subnetwork_closed(r.controlled, r.plan.partition.fixed), "closure");
    o.require(dt < kScaleSeconds, "runtime");
    o.require(rss < kScaleMemoryKiB, "memory");
    o.note << (o.pass ? "" : "; ") << "runtime " << dt << " s, peak RSS " << rss / 1024 << " MiB, "
           << r.plan.pinned().size() << " pinned";
  });

  criterion(10, "Substituted claims: 90-node placeholder, sampled T-LGL attractors", [](Outcome& o) {
    std::istringstream placeholder(ts::fixture("tcell90.bn"));
    std::string line;
    std::size_t rules = 0;
    while (std::getline(placeholder, line))
      if (!line.empty() && line[0] != '#') ++rules;
    o.require(rules == 0, "placeholder holds no rules");
    const auto net = ts::tlgl();
    const auto target = ts::tlgl_target(net);
    const auto att = sampled_attractors(net, 2000, kSeed);
    bool outside = false;
    for (const auto& cycle : att)
      for (const auto& s : cycle) outside |= !member(target, s);
    o.require(att.size() >= 2, "at least two attractors");
    o.require(outside, "an attractor outside the target set");
    o.note << (o.pass ? "" : "; ") << att.size() << " attractors sampled";
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
