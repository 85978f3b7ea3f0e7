#include "ssa/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ssa {

int ReactionNetwork::species_index(const std::string& name) const {
  for (int s = 0; s < static_cast<int>(species_names.size()); ++s) {
    if (species_names[s] == name) return s;
  }
  return -1;
}

namespace {

int reactant_order(const Channel& c) {
  int order = 0;
  for (const auto& r : c.reactants) order += r.coefficient;
  return order;
}

}  // namespace

void ReactionNetwork::validate() const {
  if (species_count < 1) throw std::invalid_argument("network has no species");
  if (channels.empty()) throw std::invalid_argument("network has no channels");
  for (const Channel& c : channels) {
    for (const auto& r : c.reactants) {
      if (r.species < 0 || r.species >= species_count)
        throw std::invalid_argument("channel '" + c.name + "': reactant species out of range");
      if (r.coefficient < 1)
        throw std::invalid_argument("channel '" + c.name + "': nonpositive reactant coefficient");
    }
    for (const auto& sc : c.stoichiometry) {
      if (sc.species < 0 || sc.species >= species_count)
        throw std::invalid_argument("channel '" + c.name + "': stoichiometry species out of range");
      if (sc.delta == 0)
        throw std::invalid_argument("channel '" + c.name + "': zero stoichiometry entry");
    }
    if (c.rate_constant < 0)
      throw std::invalid_argument("channel '" + c.name + "': negative rate constant");
    const int order = reactant_order(c);
    const bool ok = (c.kinetic_law == KineticLaw::ZerothOrder && order == 0) ||
                    (c.kinetic_law == KineticLaw::Unimolecular && order == 1) ||
                    (c.kinetic_law == KineticLaw::BimolecularDistinct && order == 2 &&
                     c.reactants.size() == 2) ||
                    (c.kinetic_law == KineticLaw::BimolecularIdentical && order == 2 &&
                     c.reactants.size() == 1);
    if (!ok)
      throw std::invalid_argument("channel '" + c.name + "': reactant order does not match kinetic law");
  }
}

double propensity(const Channel& channel, const SystemState& state) {
  for (const auto& r : channel.reactants) {
    if (state.populations[r.species] < r.coefficient) return 0.0;
  }
  switch (channel.kinetic_law) {
    case KineticLaw::ZerothOrder:
      return channel.rate_constant;
    case KineticLaw::Unimolecular: {
      const auto n = state.populations[channel.reactants[0].species];
      return channel.rate_constant * static_cast<double>(n);
    }
    case KineticLaw::BimolecularDistinct: {
      const auto na = state.populations[channel.reactants[0].species];
      const auto nb = state.populations[channel.reactants[1].species];
      return channel.rate_constant * static_cast<double>(na) * static_cast<double>(nb);
    }
    case KineticLaw::BimolecularIdentical: {
      const auto n = state.populations[channel.reactants[0].species];
      return channel.rate_constant * static_cast<double>(n) * static_cast<double>(n - 1) * 0.5;
    }
  }
  return 0.0;
}

PropensityVector compute_all_propensities(const ReactionNetwork& network,
                                          const SystemState& state) {
  PropensityVector pv;
  pv.values.resize(network.channels.size());
  pv.sum = 0.0;
  for (size_t j = 0; j < network.channels.size(); ++j) {
    pv.values[j] = propensity(network.channels[j], state);
    pv.sum += pv.values[j];
  }
  return pv;
}

void apply_reaction(SystemState& state, const ReactionNetwork& network, int channel_index) {
  const Channel& c = network.channels[channel_index];
  for (const auto& sc : c.stoichiometry) {
    state.populations[sc.species] += sc.delta;
    if (state.populations[sc.species] < 0)
      throw std::logic_error("apply_reaction: population of species " +
                             std::to_string(sc.species) + " went negative firing channel '" +
                             c.name + "'");
  }
}

DependencyGraph build_dependency_graph(const ReactionNetwork& network) {
  const int M = network.channel_count();
  // species -> channels that use it as a reactant
  std::vector<std::vector<int>> users(network.species_count);
  for (int j = 0; j < M; ++j) {
    for (const auto& r : network.channels[j].reactants) users[r.species].push_back(j);
  }
  DependencyGraph g;
  g.affects.resize(M);
  for (int j = 0; j < M; ++j) {
    auto& out = g.affects[j];
    out.push_back(j);
    for (const auto& sc : network.channels[j].stoichiometry) {
      const auto& u = users[sc.species];
      out.insert(out.end(), u.begin(), u.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return g;
}

}  // namespace ssa
