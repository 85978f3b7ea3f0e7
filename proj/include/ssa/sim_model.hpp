#pragma once

#include <optional>

#include "ssa/model.hpp"
#include "ssa/nsm_queue.hpp"

namespace ssa {

// Everything a simulation needs: network, dependency graph, initial state,
// and (for spatial models or anything the NSM should run) the subvolume
// layout of the flat channel index space.
struct SimModel {
  ReactionNetwork network;
  DependencyGraph graph;
  SystemState initial_state;
  std::optional<SubvolumeLayout> layout;
};

// Convenience: builds the dependency graph and wraps a well-mixed model.
SimModel make_sim_model(ReactionNetwork network, SystemState initial_state);

}  // namespace ssa
