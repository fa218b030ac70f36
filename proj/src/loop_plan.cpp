// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "fusevec/loop_engine.hpp"

namespace fusevec {
namespace {

bool supported_unroll(int u) { return u == 1 || u == 2 || u == 4 || u == 8; }

}  // namespace

UnrollPlan select_plan(int footprint, std::size_t length, simd::LaneCapabilities caps,
                       const PlanOverrides& overrides) {
  if (footprint < 1) throw ConfigError("register footprint must be at least 1");
  const int budget = overrides.register_budget.value_or(kDefaultRegisterBudget);
  if (budget < 1) throw ConfigError("register budget must be at least 1");

  UnrollPlan plan;
  plan.width = caps.specialized ? caps.width : 1;

  if (overrides.unroll) {
    if (!supported_unroll(*overrides.unroll))
      throw ConfigError("unroll must be one of 1, 2, 4, 8 (got " +
                        std::to_string(*overrides.unroll) + ")");
    plan.unroll = *overrides.unroll;
  } else if (!caps.specialized) {
    plan.unroll = 1;
  } else {
    plan.unroll = 1;
    for (int u : {8, 4, 2}) {
      if (u * footprint <= budget) {
        plan.unroll = u;
        break;
      }
    }
  }

  if (!is_power_of_two(std::size_t(plan.unroll) * plan.width))
    throw ConfigError("unroll * lane width must be a power of two");

  plan.packages = overrides.packages.value_or(plan.unroll);
  if (plan.packages < 1 || plan.unroll % plan.packages != 0)
    throw ConfigError("packages (" + std::to_string(plan.packages) +
                      ") must divide unroll (" + std::to_string(plan.unroll) + ")");

  plan.masked_length = masked_length(length, std::size_t(plan.unroll) * plan.width);
  return plan;
}

const char* call_name(Call c) {
  switch (c) {
    case Call::init: return "init";
    case Call::load_once: return "load_once";
    case Call::load: return "load";
    case Call::vector_op: return "op";
    case Call::store: return "store";
    case Call::single_op: return "single_op";
    case Call::cleanup: return "cleanup";
    case Call::reduction: return "reduction";
  }
  return "?";
}

std::string to_string(const TraceEvent& e) {
  std::string s = call_name(e.call);
  switch (e.call) {
    case Call::load:
    case Call::vector_op:
    case Call::store:
    case Call::single_op:
      s += "(" + std::to_string(e.index) + ")";
      break;
    default:
      break;
  }
  return s;
}

}  // namespace fusevec
