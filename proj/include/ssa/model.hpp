#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssa {

// Elementary kinetic laws, reactant order 0, 1 or 2.
enum class KineticLaw {
  ZerothOrder,
  Unimolecular,
  BimolecularDistinct,
  BimolecularIdentical,
};

struct Reactant {
  int species = 0;
  int coefficient = 1;
};

struct SpeciesChange {
  int species = 0;
  int delta = 0;
};

// One reaction channel. `stoichiometry` is the sparse net population change;
// catalytic species appear in `reactants` but not in `stoichiometry`.
struct Channel {
  std::string name;
  std::vector<Reactant> reactants;
  std::vector<SpeciesChange> stoichiometry;
  double rate_constant = 0.0;
  KineticLaw kinetic_law = KineticLaw::ZerothOrder;
};

struct ReactionNetwork {
  int species_count = 0;
  std::vector<std::string> species_names;  // may be empty for synthetic networks
  std::vector<Channel> channels;

  int channel_count() const { return static_cast<int>(channels.size()); }
  int species_index(const std::string& name) const;  // -1 if unknown

  // Throws std::invalid_argument on any structural violation.
  void validate() const;
};

struct SystemState {
  std::vector<std::int64_t> populations;
  double time = 0.0;
};

struct PropensityVector {
  std::vector<double> values;
  double sum = 0.0;  // sequential sum in ascending channel order
};

// affects[j]: sorted channel indices whose propensity may change when j
// fires; always contains j.
struct DependencyGraph {
  std::vector<std::vector<int>> affects;
};

// Mass-action propensity of one channel in the given state. Returns exactly
// zero when any required reactant population is insufficient.
double propensity(const Channel& channel, const SystemState& state);

PropensityVector compute_all_propensities(const ReactionNetwork& network,
                                          const SystemState& state);

// Applies the stoichiometry of channel j in place; time is untouched.
// Throws std::logic_error if a population would go negative (an exactness
// bug: the propensity should have been zero).
void apply_reaction(SystemState& state, const ReactionNetwork& network, int channel_index);

DependencyGraph build_dependency_graph(const ReactionNetwork& network);

}  // namespace ssa
