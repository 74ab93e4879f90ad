// bnpin: partition, synthesize, verify and export for Boolean network pinning.
//
// Exit status: 0 success or verification pass, 1 verification failure,
// 2 input error, 3 internal error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bnpin/bnpin.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bnpin::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bnpin::Error("cannot write '" + path + "'");
  out << text;
}

bnpin::BooleanNetwork load_network(const std::string& path, std::size_t cap) {
  try {
    return bnpin::parse_network(read_file(path), cap);
  } catch (const bnpin::ParseError& e) {
    throw bnpin::ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

// A target argument is a file path if one exists, otherwise inline text.
bnpin::TargetSet load_target(const std::string& arg, const bnpin::BooleanNetwork& net) {
  const bool is_file = std::filesystem::is_regular_file(arg);
  return bnpin::parse_target(is_file ? read_file(arg) : arg, net);
}

struct Common {
  std::string model;
  std::string target;
  std::size_t arity_cap = bnpin::kDefaultArityCap;
};

int cmd_partition(const Common& c, const std::string& out) {
  const auto net = load_network(c.model, c.arity_cap);
  const auto target = load_target(c.target, net);
  const auto part = bnpin::lambda_partition(target, net.size());
  write_output(out, bnpin::partition_json(part, net).dump(2) + "\n");
  return kExitPass;
}

int cmd_synthesize(const Common& c, std::optional<std::size_t> tau, const std::string& plan_path,
                   const std::string& out_path) {
  const auto net = load_network(c.model, c.arity_cap);
  const auto target = load_target(c.target, net);
  if (tau && *tau < 1) throw bnpin::Error("--tau must be at least 1");
  const auto result = bnpin::synthesize(net, target, {tau, c.arity_cap});
  write_output(plan_path, bnpin::plan_json(result, net).dump(2) + "\n");
  if (!out_path.empty()) write_output(out_path, bnpin::emit_network(result.controlled));
  return kExitPass;
}

int cmd_verify(const Common& c, const bnpin::Budget& budget, const std::string& report_path) {
  const auto net = load_network(c.model, c.arity_cap);
  const auto target = load_target(c.target, net);
  if (budget.samples < 1) throw bnpin::Error("--samples must be at least 1");
  const auto rep = bnpin::check_set_stabilization(net, target, budget);

  std::optional<bnpin::NodePartition> part;
  try {
    part = bnpin::lambda_partition(target, net.size());
  } catch (const bnpin::AmbiguousTarget&) {
  }
  std::optional<bnpin::TimeBoundResult> bound;
  if (part && rep.diameter && part->fixed.size() <= std::min(budget.exhaustive_cap, bnpin::kMaxExhaustiveBits))
    bound = bnpin::time_bound_check(net, part->fixed, budget.exhaustive_cap);

  write_output(report_path, bnpin::report_json(rep, part, bound).dump(2) + "\n");
  const bool ok = rep.pass && (!bound || bound->pass);
  std::cerr << (ok ? "PASS" : "FAIL") << " mode=" << bnpin::mode_name(rep.mode) << " tau*=" << rep.tau_star
            << " violations=" << rep.violation_count << "\n";
  return ok ? kExitPass : kExitFail;
}

std::string state_graph_dot(const bnpin::BooleanNetwork& net, std::size_t bound, std::size_t samples,
                            std::uint64_t seed, std::size_t horizon) {
  std::set<std::pair<bnpin::StateVector, bnpin::StateVector>> edges;
  std::set<bnpin::StateVector> states;
  if (net.size() <= bound) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << net.size()); ++s) {
      auto x = bnpin::StateVector::from_word(net.size(), s);
      auto y = bnpin::step(net, x);
      states.insert(x);
      edges.emplace(std::move(x), std::move(y));
    }
  } else if (samples > 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      auto x = bnpin::detail::random_state(net.size(), rng);
      for (std::size_t t = 0; t < horizon && !states.count(x); ++t) {
        auto y = bnpin::step(net, x);
        states.insert(x);
        edges.emplace(x, y);
        x = std::move(y);
      }
    }
  } else {
    throw bnpin::Error("state graph of " + std::to_string(net.size()) + " nodes exceeds --bound " +
                       std::to_string(bound) + "; pass --samples to export a sampled subgraph");
  }
  std::ostringstream os;
  os << "digraph stg {\n";
  for (const auto& [x, y] : edges) os << "  \"" << x.to_string() << "\" -> \"" << y.to_string() << "\";\n";
  os << "}\n";
  return os.str();
}

int cmd_export(const Common& c, const std::string& what, const std::string& plan_path, std::size_t bound,
               std::size_t samples, std::uint64_t seed, std::size_t horizon, const std::string& out) {
  const auto net = load_network(c.model, c.arity_cap);
  if (what == "structure") {
    bnpin::PlanOverlay overlay;
    if (!plan_path.empty()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(plan_path));
      } catch (const nlohmann::json::exception& e) {
        throw bnpin::Error(plan_path + ": " + e.what());
      }
      overlay = bnpin::read_plan_overlay(doc, net.size());
    }
    auto g = bnpin::network_structure(net);
    for (const auto& a : overlay.removed) g.remove_arc(a.tail, a.head);
    write_output(out, bnpin::to_dot(g, net.names(), overlay.removed, overlay.pinned));
    return kExitPass;
  }
  write_output(out, state_graph_dot(net, bound, samples, seed, horizon));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pinning control synthesis and verification for Boolean networks"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_target) {
    sub->add_option("model", common.model, "Rule file, one 'NAME, EXPR' line per node")->required();
    if (with_target)
      sub->add_option("-t,--target", common.target, "Target file or inline target text")->required();
    sub->add_option("--arity-cap", common.arity_cap, "Largest rule arity to enumerate")
        ->default_val(bnpin::kDefaultArityCap);
  };

  std::string out;

  auto* partition = app.add_subcommand("partition", "Split nodes into free and fixed-state sets");
  add_common(partition, true);
  partition->add_option("-o,--out", out, "Partition JSON (default stdout)");

  std::optional<std::size_t> tau;
  std::string plan_path;
  auto* synth = app.add_subcommand("synthesize", "Select pinned nodes and design controllers");
  add_common(synth, true);
  synth->add_option("--tau", tau, "Stabilizing-time bound")->check(CLI::PositiveNumber);
  synth->add_option("--plan", plan_path, "Plan JSON (default stdout)");
  synth->add_option("-o,--out", out, "Controlled rule file");

  bnpin::Budget budget;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Check global set stabilization");
  add_common(verify, true);
  verify->add_option("--samples", budget.samples, "Random initial states")->default_val(budget.samples);
  verify->add_option("--horizon", budget.horizon, "Steps per sampled trajectory")->default_val(budget.horizon);
  verify->add_option("--seed", budget.seed, "Sampling seed")->default_val(budget.seed);
  verify->add_option("--exhaustive-cap", budget.exhaustive_cap, "Largest node count for exhaustive search")
      ->default_val(budget.exhaustive_cap);
  verify->add_option("--threads", budget.threads, "Worker threads (0: all cores)")->default_val(budget.threads);
  verify->add_option("--report", report_path, "Report JSON (default stdout)");

  std::string what = "structure";
  std::size_t bound = 16;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::size_t horizon = 40;
  auto* exp = app.add_subcommand("export", "Write Graphviz DOT");
  add_common(exp, false);
  exp->add_option("--what", what, "structure or stg")->check(CLI::IsMember({"structure", "stg"}));
  exp->add_option("--plan", plan_path, "Plan JSON for dashed arcs and pinned nodes");
  exp->add_option("--bound", bound, "Largest node count for a full state graph")->default_val(bound);
  exp->add_option("--samples", samples, "Sampled trajectories when over the bound")->default_val(samples);
  exp->add_option("--seed", seed, "Sampling seed")->default_val(seed);
  exp->add_option("--horizon", horizon, "Steps per sampled trajectory")->default_val(horizon);
  exp->add_option("-o,--out", out, "DOT output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*partition) return cmd_partition(common, out);
    if (*synth) return cmd_synthesize(common, tau, plan_path, out);
    if (*verify) return cmd_verify(common, budget, report_path);
    if (*exp) return cmd_export(common, what, plan_path, bound, samples, seed, horizon, out);
  } catch (const bnpin::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const bnpin::AmbiguousTarget& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const bnpin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
