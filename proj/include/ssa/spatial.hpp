#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ssa/sim_model.hpp"

namespace ssa {

// Periodic cubic lattice. Directions are ordered +x,-x,+y,-y,+z,-z. Under
// periodicity every subvolume has exactly six neighbors; dims of 1 or 2 make
// some neighbor pairs coincide (a dim of 1 yields self-loops), which is
// permitted.
struct Mesh {
  int nx = 1, ny = 1, nz = 1;
  double side_length = 1.0;  // subvolume edge, micrometers

  int subvolume_count() const { return nx * ny * nz; }
  int index_of(int x, int y, int z) const { return (z * ny + y) * nx + x; }
  std::array<int, 3> coords_of(int v) const {
    return {v % nx, (v / nx) % ny, v / (nx * ny)};
  }
  int neighbor(int v, int direction) const;
};

Mesh build_mesh(int nx, int ny, int nz, double side_length);

// Per-direction, per-molecule diffusive transfer rate constant.
inline double diffusion_rate_constant(double diffusion_coefficient, double side_length) {
  return diffusion_coefficient / (side_length * side_length);
}

// A reaction-diffusion model before flattening. The local network's
// bimolecular stochastic constants must already be scaled to the subvolume
// volume.
struct SpatialModel {
  Mesh mesh;
  ReactionNetwork local_network;
  std::vector<double> diffusion_coefficients;  // per species, um^2/s

  int local_species() const { return local_network.species_count; }
  int local_reaction_count() const { return local_network.channel_count(); }
  int local_channels() const { return local_reaction_count() + 6 * local_species(); }
  int flat_channel_count() const { return mesh.subvolume_count() * local_channels(); }

  int flat_species(int v, int s) const { return v * local_species() + s; }
  int reaction_channel(int v, int local_j) const { return v * local_channels() + local_j; }
  int diffusion_channel(int v, int s, int direction) const {
    return v * local_channels() + local_reaction_count() + s * 6 + direction;
  }
  SubvolumeLayout layout() const {
    return SubvolumeLayout{mesh.subvolume_count(), local_reaction_count(), 6 * local_species()};
  }
};

// Duplicates the local network into every subvolume and appends one
// diffusive-transfer channel per species and direction; self-loop transfers
// (degenerate dims) are kept with rate zero so the flat index stays
// closed-form. Populations start at zero.
SimModel flatten_rdme(const SpatialModel& spatial);

// The two-enzyme product-inhibition model on a periodic cube. domain_side
// must be an integer multiple of subvolume_side (both micrometers). Enzymes
// are scattered uniformly at random with the given placement seed.
SimModel elf_ehrenberg_model(double domain_side, double subvolume_side,
                             std::uint64_t placement_seed = 1);

// Well-mixed variant of the same network in a single volume (um^3), with
// bimolecular constants converted for that volume; initial enzyme copy
// numbers from the nanomolar concentration, other species zero.
struct WellMixedModel {
  ReactionNetwork network;
  SystemState initial_state;
};
WellMixedModel elf_ehrenberg_well_mixed(double volume_um3);

// Species indices of the Elf-Ehrenberg network, in canonical order.
enum ElfSpecies : int {
  kElfEA = 0,
  kElfEB,
  kElfA,
  kElfB,
  kElfEAB,
  kElfEAB2,
  kElfEBA,
  kElfEBA2,
  kElfSpeciesCount
};

}  // namespace ssa
