#pragma once

// JSON views of partitions, pinning plans and verification reports.
// Node indices are 1-based in every document.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"
#include "bnpin/partition.hpp"
#include "bnpin/structure.hpp"
#include "bnpin/synthesis.hpp"
#include "bnpin/verify.hpp"

namespace bnpin {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline nlohmann::json one_based(const std::vector<std::size_t>& nodes) {
  auto out = nlohmann::json::array();
  for (auto j : nodes) out.push_back(j + 1);
  return out;
}

inline nlohmann::json arcs_json(const std::vector<Arc>& arcs) {
  auto out = nlohmann::json::array();
  for (const auto& a : arcs) out.push_back({{"tail", a.tail + 1}, {"head", a.head + 1}});
  return out;
}

inline std::string bits(const std::vector<std::uint8_t>& v) {
  std::string s;
  for (auto b : v) s.push_back(b ? '1' : '0');
  return s;
}

inline std::vector<std::size_t> read_nodes(const nlohmann::json& j, std::size_t n) {
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    const auto k = v.get<std::size_t>();
    if (k < 1 || k > n) throw Error("plan node index " + std::to_string(k) + " out of range");
    out.push_back(k - 1);
  }
  return out;
}

}  // namespace detail

inline nlohmann::json partition_json(const NodePartition& part, const BooleanNetwork& net) {
  nlohmann::json names = nlohmann::json::array();
  for (auto j : part.fixed) names.push_back(net.name(j));
  return {{"schema", "bnpin.partition"},
          {"version", kSchemaVersion},
          {"size", part.size()},
          {"free", detail::one_based(part.free)},
          {"fixed", detail::one_based(part.fixed)},
          {"fixed_names", names},
          {"alpha", detail::bits(part.alpha)}};
}

inline nlohmann::json plan_json(const SynthesisResult& result, const BooleanNetwork& net) {
  const auto& plan = result.plan;
  nlohmann::json controllers = nlohmann::json::array();
  for (std::size_t k = 0; k < result.controllers.size(); ++k) {
    const auto& c = result.controllers[k];
    const auto& t = plan.targets[k];
    controllers.push_back({{"node", c.node + 1},
                           {"name", net.name(c.node)},
                           {"inputs", detail::one_based(c.inputs)},
                           {"retained", detail::one_based(t.retained)},
                           {"dropped", detail::one_based(t.dropped)},
                           {"coupling", coupling_name(c.coupling)},
                           {"phi", format_expr(c.phi, net)},
                           {"s_f", c.s_f.to_string()},
                           {"s_phi", c.s_phi.to_string()},
                           {"target", c.target.to_string()},
                           {"reduced_target", t.target.to_string()},
                           {"target_overwritten", t.overwritten}});
  }
  return {{"schema", "bnpin.plan"},
          {"version", kSchemaVersion},
          {"size", net.size()},
          {"tau", plan.tau ? nlohmann::json(*plan.tau) : nlohmann::json(nullptr)},
          {"partition", partition_json(plan.partition, net)},
          {"parts",
           {{"part1", {{"nodes", detail::one_based(plan.part1.nodes)}, {"arcs", detail::arcs_json(plan.part1.arcs)}}},
            {"part2",
             {{"nodes", detail::one_based(plan.part2.nodes)},
              {"arcs", detail::arcs_json(plan.part2.arcs)},
              {"diameter_arcs", detail::arcs_json(plan.diameter_arcs)}}},
            {"part3", {{"nodes", detail::one_based(plan.part3)}}}}},
          {"pinned", detail::one_based(plan.pinned())},
          {"removed_arcs", detail::arcs_json(plan.removed_arcs())},
          {"controlled_diameter", controlled_diameter(result.controlled, plan.partition.fixed)},
          {"controllers", controllers}};
}

// Pinned nodes and removed arcs read back from a plan document.
struct PlanOverlay {
  std::vector<std::size_t> pinned;
  std::vector<Arc> removed;
};

inline PlanOverlay read_plan_overlay(const nlohmann::json& doc, std::size_t n) {
  if (doc.value("schema", "") != "bnpin.plan") throw Error("not a plan document");
  if (doc.value("version", 0) != kSchemaVersion) throw Error("unsupported plan version");
  if (doc.at("size").get<std::size_t>() != n) throw Error("plan size does not match the network");
  PlanOverlay out;
  out.pinned = detail::read_nodes(doc.at("pinned"), n);
  for (const auto& a : doc.at("removed_arcs")) {
    const auto t = detail::read_nodes(nlohmann::json::array({a.at("tail")}), n);
    const auto h = detail::read_nodes(nlohmann::json::array({a.at("head")}), n);
    out.removed.push_back({t[0], h[0]});
  }
  return out;
}

inline nlohmann::json report_json(const VerificationReport& rep, const std::optional<NodePartition>& part,
                                  const std::optional<TimeBoundResult>& bound) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : rep.violations)
    violations.push_back({{"initial", v.initial.to_string()},
                          {"escape_time", v.escape_time},
                          {"horizon_exhausted", v.horizon_exhausted}});
  nlohmann::json out = {{"schema", "bnpin.report"},
                        {"version", kSchemaVersion},
                        {"mode", mode_name(rep.mode)},
                        {"pass", rep.pass},
                        {"seed", rep.seed},
                        {"samples", rep.samples},
                        {"horizon", rep.horizon},
                        {"checked_states", rep.checked_states},
                        {"tau_star", rep.tau_star},
                        {"violation_count", rep.violation_count},
                        {"violations", violations}};
  out["fixed_nodes"] = part ? detail::one_based(part->fixed) : nlohmann::json(nullptr);
  out["fixed_point"] = rep.fixed_point ? nlohmann::json(detail::bits(*rep.fixed_point)) : nlohmann::json(nullptr);
  out["diameter"] = rep.diameter ? nlohmann::json(*rep.diameter) : nlohmann::json(nullptr);
  out["diameter_bound"] = rep.diameter_bound ? nlohmann::json(*rep.diameter_bound) : nlohmann::json(nullptr);
  if (bound)
    out["time_bound"] = {{"pass", bound->pass}, {"worst_steps", bound->worst_steps}, {"bound", bound->bound}};
  else
    out["time_bound"] = nullptr;
  return out;
}

}  // namespace bnpin
