#include "ssa/spatial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ssa/rng.hpp"

namespace ssa {

int Mesh::neighbor(int v, int direction) const {
  auto [x, y, z] = coords_of(v);
  switch (direction) {
    case 0: x = (x + 1) % nx; break;
    case 1: x = (x + nx - 1) % nx; break;
    case 2: y = (y + 1) % ny; break;
    case 3: y = (y + ny - 1) % ny; break;
    case 4: z = (z + 1) % nz; break;
    case 5: z = (z + nz - 1) % nz; break;
    default: throw std::invalid_argument("mesh: direction must be 0..5");
  }
  return index_of(x, y, z);
}

Mesh build_mesh(int nx, int ny, int nz, double side_length) {
  if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("mesh: dims must be >= 1");
  if (!(side_length > 0)) throw std::invalid_argument("mesh: side length must be positive");
  return Mesh{nx, ny, nz, side_length};
}

SimModel flatten_rdme(const SpatialModel& spatial) {
  const Mesh& mesh = spatial.mesh;
  const ReactionNetwork& local = spatial.local_network;
  const int ns = mesh.subvolume_count();
  const int s_local = spatial.local_species();
  if (static_cast<int>(spatial.diffusion_coefficients.size()) != s_local)
    throw std::invalid_argument("flatten_rdme: one diffusion coefficient per species required");

  SimModel model;
  model.network.species_count = ns * s_local;
  model.network.channels.reserve(static_cast<size_t>(spatial.flat_channel_count()));

  for (int v = 0; v < ns; ++v) {
    for (const Channel& c : local.channels) {
      Channel flat = c;
      flat.name = c.name + "@" + std::to_string(v);
      for (auto& r : flat.reactants) r.species = spatial.flat_species(v, r.species);
      for (auto& sc : flat.stoichiometry) sc.species = spatial.flat_species(v, sc.species);
      model.network.channels.push_back(std::move(flat));
    }
    for (int s = 0; s < s_local; ++s) {
      for (int d = 0; d < 6; ++d) {
        const int w = mesh.neighbor(v, d);
        Channel hop;
        hop.name = "D" + std::to_string(s) + "@" + std::to_string(v) + ">" + std::to_string(w);
        hop.kinetic_law = KineticLaw::Unimolecular;
        hop.reactants = {{spatial.flat_species(v, s), 1}};
        if (w == v) {
          hop.rate_constant = 0.0;  // self-loop, kept so the index stays uniform
        } else {
          hop.rate_constant =
              diffusion_rate_constant(spatial.diffusion_coefficients[s], mesh.side_length);
          hop.stoichiometry = {{spatial.flat_species(v, s), -1}, {spatial.flat_species(w, s), +1}};
        }
        model.network.channels.push_back(std::move(hop));
      }
    }
  }
  model.graph = build_dependency_graph(model.network);
  model.initial_state.populations.assign(model.network.species_count, 0);
  model.initial_state.time = 0.0;
  model.layout = spatial.layout();
  return model;
}

namespace {

constexpr double kAvogadro = 6.02214076e23;
constexpr double kProductionRate = 150.0;       // k1, 1/s
constexpr double kAssociationMolar = 4.62e7;    // ka, 1/(M s)  (= 46.2 per uM s)
constexpr double kDissociationRate = 3.82;      // kd, 1/s
constexpr double kDecayRate = 6.0;              // k4, 1/s
constexpr double kDiffusion = 1.0;              // D, um^2/s    (= 1e-8 cm^2/s)
constexpr double kEnzymeConcentration = 12.3e-9;  // mol/L

// Stochastic bimolecular constant for a volume given in cubic micrometers.
double association_constant(double volume_um3) {
  const double volume_liters = volume_um3 * 1e-15;
  return kAssociationMolar / (kAvogadro * volume_liters);
}

std::int64_t enzyme_copies(double volume_um3) {
  const double volume_liters = volume_um3 * 1e-15;
  return std::llround(kEnzymeConcentration * kAvogadro * volume_liters);
}

ReactionNetwork elf_network_for_volume(double volume_um3) {
  const double ka = association_constant(volume_um3);
  ReactionNetwork net;
  net.species_count = kElfSpeciesCount;
  net.species_names = {"E_A", "E_B", "A", "B", "E_AB", "E_AB2", "E_BA", "E_BA2"};

  auto uni = [](std::string name, int reactant, std::vector<SpeciesChange> stoich, double k) {
    Channel c;
    c.name = std::move(name);
    c.kinetic_law = KineticLaw::Unimolecular;
    c.reactants = {{reactant, 1}};
    c.stoichiometry = std::move(stoich);
    c.rate_constant = k;
    return c;
  };
  auto bi = [](std::string name, int ra, int rb, std::vector<SpeciesChange> stoich, double k) {
    Channel c;
    c.name = std::move(name);
    c.kinetic_law = KineticLaw::BimolecularDistinct;
    c.reactants = {{ra, 1}, {rb, 1}};
    c.stoichiometry = std::move(stoich);
    c.rate_constant = k;
    return c;
  };

  net.channels = {
      uni("produce_A", kElfEA, {{kElfA, +1}}, kProductionRate),
      uni("produce_B", kElfEB, {{kElfB, +1}}, kProductionRate),
      bi("bind_EA_B", kElfEA, kElfB, {{kElfEA, -1}, {kElfB, -1}, {kElfEAB, +1}}, ka),
      uni("unbind_EAB", kElfEAB, {{kElfEAB, -1}, {kElfEA, +1}, {kElfB, +1}}, kDissociationRate),
      bi("bind_EAB_B", kElfEAB, kElfB, {{kElfEAB, -1}, {kElfB, -1}, {kElfEAB2, +1}}, ka),
      uni("unbind_EAB2", kElfEAB2, {{kElfEAB2, -1}, {kElfEAB, +1}, {kElfB, +1}},
          kDissociationRate),
      bi("bind_EB_A", kElfEB, kElfA, {{kElfEB, -1}, {kElfA, -1}, {kElfEBA, +1}}, ka),
      uni("unbind_EBA", kElfEBA, {{kElfEBA, -1}, {kElfEB, +1}, {kElfA, +1}}, kDissociationRate),
      bi("bind_EBA_A", kElfEBA, kElfA, {{kElfEBA, -1}, {kElfA, -1}, {kElfEBA2, +1}}, ka),
      uni("unbind_EBA2", kElfEBA2, {{kElfEBA2, -1}, {kElfEBA, +1}, {kElfA, +1}},
          kDissociationRate),
      uni("decay_A", kElfA, {{kElfA, -1}}, kDecayRate),
      uni("decay_B", kElfB, {{kElfB, -1}}, kDecayRate),
  };
  net.validate();
  return net;
}

}  // namespace

WellMixedModel elf_ehrenberg_well_mixed(double volume_um3) {
  WellMixedModel m;
  m.network = elf_network_for_volume(volume_um3);
  m.initial_state.populations.assign(kElfSpeciesCount, 0);
  const std::int64_t copies = enzyme_copies(volume_um3);
  m.initial_state.populations[kElfEA] = copies;
  m.initial_state.populations[kElfEB] = copies;
  m.initial_state.time = 0.0;
  return m;
}

SimModel elf_ehrenberg_model(double domain_side, double subvolume_side,
                             std::uint64_t placement_seed) {
  const double ratio = domain_side / subvolume_side;
  const int n = static_cast<int>(std::llround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("spatial model: domain side must be an integer multiple of the subvolume side");

  SpatialModel spatial;
  spatial.mesh = build_mesh(n, n, n, subvolume_side);
  const double v_sub = subvolume_side * subvolume_side * subvolume_side;
  spatial.local_network = elf_network_for_volume(v_sub);
  spatial.diffusion_coefficients.assign(kElfSpeciesCount, kDiffusion);

  SimModel model = flatten_rdme(spatial);

  const double v_domain = domain_side * domain_side * domain_side;
  const std::int64_t copies = enzyme_copies(v_domain);
  RngStream placement(placement_seed);
  const int ns = spatial.mesh.subvolume_count();
  for (std::int64_t i = 0; i < copies; ++i) {
    const int v = static_cast<int>(placement.uniform_index(static_cast<std::size_t>(ns)));
    ++model.initial_state.populations[spatial.flat_species(v, kElfEA)];
  }
  for (std::int64_t i = 0; i < copies; ++i) {
    const int v = static_cast<int>(placement.uniform_index(static_cast<std::size_t>(ns)));
    ++model.initial_state.populations[spatial.flat_species(v, kElfEB)];
  }
  return model;
}

SimModel make_sim_model(ReactionNetwork network, SystemState initial_state) {
  SimModel m;
  m.graph = build_dependency_graph(network);
  m.network = std::move(network);
  m.initial_state = std::move(initial_state);
  return m;
}

}  // namespace ssa
