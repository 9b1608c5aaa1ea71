#pragma once

#include <cstdint>
#include <vector>

#include "isospec/hamiltonian.hpp"

namespace isospec {

enum class SolverKind { Dense, Iterative };

struct SolverOptions {
  int k = 4;                       // number of low eigenvalues requested
  std::size_t dense_cutoff = 4096; // dims <= cutoff use the dense path
  int max_restarts_per_k = 100;    // iterative budget scales with k
  double degeneracy_tol = 1e-10;   // relative to max(1, diameter)
  std::uint64_t seed = 0;          // iterative starting-block seed
};

struct SpectralSummary {
  std::vector<double> energies;  // ascending, k+1 values (or dim if smaller)
  Eigen::VectorXcd ground;       // unit norm, canonical phase
  double e_max = 0.0;            // largest eigenvalue
  bool degenerate = false;       // E_1 - E_0 below tolerance
  SolverKind solver = SolverKind::Dense;

  double ground_energy() const { return energies.front(); }
  double diameter() const { return e_max - energies.front(); }
};

// Lowest (k+1) eigenvalues, the ground vector and the top eigenvalue of a
// Hermitian matrix. Dense path below the cutoff, restarted subspace iteration
// above it (throws solver_error if the restart budget is exhausted).
SpectralSummary eigensolve(const SparseHermitian& matrix, const SolverOptions& options = {});

// Largest-magnitude component rotated to the positive real axis (first index
// on magnitude ties), fixing the arbitrary global phase.
void canonicalize_phase(Eigen::VectorXcd& vec);

struct GroundDistribution {
  std::vector<double> pi;             // |psi_z|^2 per basis index
  std::vector<std::uint32_t> omega;   // support: indices with pi above threshold
  double threshold = 1e-14;
  bool basis_dependent = false;       // true when a degenerate ground space was overridden
};

inline constexpr double kSupportThreshold = 1e-14;

// pi_z = |psi_z|^2 and its support. Degenerate summaries are rejected unless
// allow_degenerate is set, in which case the distribution is flagged
// basis-dependent.
GroundDistribution ground_distribution(const SpectralSummary& summary,
                                       double threshold = kSupportThreshold,
                                       bool allow_degenerate = false);

double spectral_diameter(const SpectralSummary& summary);

}  // namespace isospec
