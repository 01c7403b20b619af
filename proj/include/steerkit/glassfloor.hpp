#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "steerkit/analysis.hpp"
#include "steerkit/ed.hpp"
#include "steerkit/models.hpp"

namespace steerkit::glassfloor {

using analysis::Region;

enum class Ensemble { canonical_full, canonical_sector, grand_canonical };
std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string &s);

struct RegionP {
  Region region;
  double p = 0;         // min over the whole manifold
  double basis_p = 0;   // min over the supplied basis columns only
  std::size_t rank = 0;  // support rank of the joint RDM
  Vector phi;            // removed region vector
  Vector coefficients;   // ground state attaining p, in the supplied basis
};

struct PResult {
  double p = 1;
  Region achieving;
  std::vector<RegionP> table;
};

// p = min over unit vectors of the manifold and over regions of the smallest RDM eigenvalue
PResult compute_p(const Matrix &states, const ed::Basis &basis, const std::vector<Region> &regions,
                  std::uint64_t seed = 1);

// largest eigenvalue of Pt Pi_GS Pt with Pt = (1 - |phi><phi|) on the region, built on the
// full space; equals 1 - p for the optimal phi
double projector_overlap(const Matrix &states, const ed::Basis &basis, const Region &region, const Vector &phi);

struct Surrogate {
  Vector state;
  Vector phi;
  double fidelity = 1;      // |<psi|state>|^2
  double rdm_fidelity = 1;  // Uhlmann fidelity of the two region RDMs
  double removed = 0;       // smallest RDM eigenvalue
  bool rank_deficient = false;  // RDM not full rank: surrogate is psi itself
  bool tie_broken = false;      // smallest eigenvalue was degenerate
};

// psi with the smallest Schmidt branch on `region` projected out and renormalized. A degenerate
// smallest eigenvalue removes the projection of the highest-index region basis vector onto the
// degenerate eigenspace, which keeps the lowest basis indices.
Surrogate presumed_surrogate(const Vector &psi, const ed::Basis &basis, const Region &region);

double uhlmann_fidelity(const Matrix &a, const Matrix &b);

struct EnergyFloor {
  double bound = 0;       // E_GS + p gap
  double normalized = 0;  // (<H> - E_GS) / gap >= p
};
EnergyFloor energy_floor(double e_gs, double gap, double p);

struct Level {
  double energy = 0;
  double multiplicity = 1;
};
// merge sorted eigenvalues within tol
std::vector<Level> levels_from_values(const std::vector<double> &values, double tol = 1e-9);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct TemperatureFloor {
  double t = 0;
  double beta = kInfinity;
  bool infinite = false;  // even beta = 0 gives ground weight below 1 - p
  double residual = 0;    // relative error of the ground weight at beta
};

// T = 1/beta with deg e^{-beta E_GS} / Z(beta) = 1 - p
TemperatureFloor temperature_floor(const std::vector<Level> &spectrum, double deg_gs, double e_gs, double p);
// ground Gibbs weight at beta
double ground_weight(const std::vector<Level> &spectrum, double deg_gs, double e_gs, double beta);

// A model prepared for the floor computation: ground manifold, spectrum of the chosen ensemble.
struct System {
  std::string model;
  ed::Basis basis;
  Matrix states;
  double energy = 0;
  double gap = 0;
  std::size_t degeneracy = 0;
  std::vector<Level> spectrum;  // ensemble spectrum (grand canonical: E - mu N)
  double ground_energy_in_ensemble = 0;
  double mu = 0;
  Ensemble ensemble = Ensemble::canonical_full;
  std::size_t sites = 0;
  bool fermionic = false;
};

// Builds the model and diagonalizes it. Number-conserving fermion models default to the
// particle sector; the 3x3 Fermi-Hubbard sector is solved in momentum blocks.
System prepare_system(const models::ModelSpec &spec, std::optional<Ensemble> ensemble = std::nullopt);

enum class FamilyKind { single, windows, subsets, half, half_plus_one, hubbard, explicit_list };
struct RegionFamily {
  FamilyKind kind = FamilyKind::windows;
  std::size_t m = 2;
  std::vector<Region> regions;  // explicit_list
};
// "single", "windows:2", "subsets:2", "half", "half+1", "hubbard"
RegionFamily parse_region_family(const std::string &s);
std::string to_string(const RegionFamily &f);
std::vector<Region> expand(const RegionFamily &f, const models::ModelSpec &spec);
// Fermi-Hubbard regions up to translation: on-site pairs, same-spin bonds, same-spin 3x1 lines
// and 2x2 plaquettes
std::vector<Region> hubbard_regions(std::size_t lx, std::size_t ly);

struct GlassFloorReport {
  std::string model;
  std::vector<Region> regions;
  double p = 0;
  double fidelity_bound = 1;
  double energy_bound = 0;
  double normalized_energy = 0;
  double e_gs = 0, gap = 0;
  std::size_t degeneracy = 0;
  TemperatureFloor temperature;
  double t_over_gap = 0;
  Ensemble ensemble = Ensemble::canonical_full;
  Region achieving;
  std::vector<RegionP> table;
  bool region_monotone = true;  // nested regions never increase p
  double cross_check = -1;      // projector_overlap at the achieving region, -1 when skipped
};

GlassFloorReport run_glass_floor(const System &sys, const std::vector<Region> &regions, std::uint64_t seed = 1);
GlassFloorReport run_glass_floor(const models::ModelSpec &spec, const RegionFamily &family,
                                 std::optional<Ensemble> ensemble = std::nullopt);

}  // namespace steerkit::glassfloor
