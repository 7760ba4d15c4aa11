#pragma once

#include "nicolai/fock.hpp"
#include "nicolai/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nicolai::spectra {

struct SolveOptions {
  // sector dimensions up to this bound are solved densely
  int dense_threshold = 1024;
  std::uint64_t seed = 12345;
  double lanczos_tol = 1e-10;
  int max_lanczos_steps = 400;  // block steps per sector
  int ritz_count = 8;           // low eigenvalues tracked iteratively
  int window_cap = fock::kMaxWindowSites;
};

/// One fermion-number block of a conserving operator.
struct SectorBlock {
  int fermion_number = 0;
  std::vector<std::size_t> basis_states;  // ascending occupation indices
  fock::SparseMatrix matrix;
};

/// Splits a fermion-number conserving operator into its blocks.  Throws
/// NotNumberConserving when any matrix entry couples different counts.
std::vector<SectorBlock> sector_decompose(const fock::FockOperator& h);

struct SpectrumResult {
  double ground_energy = 0.0;
  int degeneracy = 0;
  double degeneracy_tol = 0.0;
  int ground_sector = 0;
  std::map<int, double> sector_energies;  // lowest eigenvalue per sector
  std::string solver;                     // solver of the ground sector
  double residual = 0.0;                  // ||H v - E v|| for the ground pair
  std::optional<fock::FockVector> ground_vector;  // on the full window
};

/// Degenerate-level window around a ground energy: 1e-8 scaled by
/// max(1, |E0|).
double degeneracy_tolerance(double ground_energy);

/// Lowest eigenpair of a conserving operator, sector by sector.  Dense
/// blocks are solved exactly; larger ones by block Lanczos with full
/// reorthogonalization and a deterministic seed.  Degeneracy counts the
/// eigenvalues within degeneracy_tolerance of the minimum across all
/// sectors (for iterative sectors: among the converged low states).
SpectrumResult ground_of(const fock::FockOperator& h,
                         const SolveOptions& opts = {});

/// Hamiltonian pipeline for a finite region: supercharge, H = {Q, Q*},
/// matrix representation, sector solve.
SpectrumResult ground_state(const Scalar& g, const model::Region& region,
                            const SolveOptions& opts = {});

/// Builds the represented supercharge and Hamiltonian of a region.
struct RepresentedModel {
  fock::Window window;
  fock::FockOperator supercharge;
  fock::FockOperator hamiltonian;
};
RepresentedModel represent_model(const Scalar& g, const model::Region& region,
                                 int window_cap = fock::kMaxWindowSites);

struct DensityRow {
  double g = 0.0;
  int length = 0;  // nominal chain length M + N
  model::Boundary boundary = model::Boundary::periodic;
  double ground_energy = 0.0;
  double energy_per_site = 0.0;
  int degeneracy = 0;
  double residual = 0.0;
  std::string solver;
};

struct DensityCurve {
  std::vector<DensityRow> rows;
  // diagnostic least-squares fit e(L) = intercept + slope / L
  double fit_intercept = 0.0;
  double fit_slope = 0.0;
};

/// Ground energy per site across chain lengths.  Lengths must be even and
/// at least 4; the region splits L into M = 2 floor(L/4) left of the
/// origin and N = L - M to its right.
DensityCurve energy_density_curve(const Scalar& g,
                                  const std::vector<int>& lengths,
                                  model::Boundary boundary,
                                  const SolveOptions& opts = {});

/// Everything needed to check the ground-energy bound through the
/// averaged witness: a = ||Q* vac||, b = ||Q vac||, the witness norm, and
/// the three derived relations with their slacks.
struct BoundReport {
  int n = 0;
  double g_value = 0.0;
  int window_sites = 0;
  double ground_energy = 0.0;
  double a = 0.0;               // ||Q* ground||
  double b = 0.0;               // ||Q ground||
  double witness_norm = 0.0;    // ||o(n)||
  bool witness_norm_converged = true;
  double identity_error = 0.0;  // |a^2 + b^2 - E0|
  double pairing_slack = 0.0;   // (a + b) ||o(n)|| - |g|
  double bound_slack = 0.0;     // E0 - g^2 / (2 ||o(n)||^2)
  bool identity_ok = false;
  bool inequality_ok = false;
  bool lower_bound_ok = false;
};

/// Runs the bound chain on the periodic region [-3, 2n+4] that contains
/// the averaged witness with margins.  Throws ZeroCoupling for g = 0 and
/// WindowTooLarge when 2n + 8 sites exceed the window cap.
BoundReport susy_bound_check(const Scalar& g, int n,
                             const SolveOptions& opts = {});

/// Dense full spectra, for cross-checks on small systems.
std::map<int, std::vector<double>> sector_eigenvalues(
    const fock::FockOperator& h);
std::vector<double> all_eigenvalues(const fock::FockOperator& h);

}  // namespace nicolai::spectra
