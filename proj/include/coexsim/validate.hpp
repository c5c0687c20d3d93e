#pragma once

#include <string>
#include <vector>

#include "coexsim/params.hpp"

namespace coexsim {

/// Checks every node invariant plus the cross-node ones (non-empty set,
/// unique dense ids). Returns one message per violation, empty when valid.
std::vector<std::string> validate_nodes(const SimParams& params,
                                        const std::vector<NodeConfig>& nodes);

std::vector<std::string> validate_sim_params(const SimParams& params);

std::vector<std::string> validate_priority_class(const PriorityClassParams& cls);

}  // namespace coexsim
