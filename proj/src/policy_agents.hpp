#pragma once

#include <cstdint>
#include <memory>

#include "safebandit/agents.hpp"

namespace safebandit::detail {

std::unique_ptr<Agent> make_policy_agent(const AgentSpec& spec, std::size_t arm_count, double alpha,
                                         std::uint64_t seed);

}  // namespace safebandit::detail
