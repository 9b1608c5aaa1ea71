#pragma once

#include <cstdint>
#include <vector>

#include "isospec/spectra.hpp"

namespace isospec {

// A subset of basis states, stored as a membership mask over the full basis.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<char> mask);
  static Subset from_indices(std::size_t dim, const std::vector<std::uint32_t>& indices);

  std::size_t dim() const { return mask_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(std::size_t i) const { return mask_[i] != 0; }
  const std::vector<char>& mask() const { return mask_; }

  Subset complement() const;
  std::vector<std::uint32_t> indices() const;

  bool operator==(const Subset&) const = default;

 private:
  std::vector<char> mask_;
  std::size_t count_ = 0;
};

// Interior boundary: states in S with an off-diagonal matrix element (above
// the drop tolerance) to the complement.
Subset boundary(const SparseHermitian& matrix, const Subset& s);

double pi_of(const GroundDistribution& dist, const Subset& s);

// Mask-level helpers for high-volume subset sweeps, avoiding Subset
// construction per candidate: pi(S), pi(dS), and the cut conductance.
double pi_mask(const GroundDistribution& dist, const std::vector<char>& mask);
double boundary_mass(const SparseHermitian& matrix, const GroundDistribution& dist,
                     const std::vector<char>& mask);
double conductance_mask(const SpectralSummary& summary, const SparseHermitian& matrix,
                        const std::vector<char>& mask);

struct CutReport {
  Subset subset;
  double pi_S = 0.0;
  double pi_boundary = 0.0;
  double pi_complement = 0.0;
  double expansion = 0.0;    // pi(boundary)/pi(S), after any complement swap
  double conductance = 0.0;  // -Re<psi| 1_S H 1_{S^c} |psi>
  double bound_thm1 = 0.0;   // 2 * diameter * expansion
  double bound_thm3 = 0.0;   // conductance / (pi_S * pi_complement)
  double slack_thm1 = 0.0;   // bound_thm1 - gap
  double slack_thm3 = 0.0;
  bool swapped = false;          // vertex-expansion side evaluated on the complement
  bool basis_dependent = false;  // distribution came from a degenerate override
};

// Vertex-expansion upper bound on the gap: gap <= 2 * diameter * pi(dS)/pi(S).
// Requires 0 < pi(S); if pi(S) > 1/2 the complement is used and the swap
// recorded.
CutReport expansion_bound(const SpectralSummary& summary, const GroundDistribution& dist,
                          const SparseHermitian& matrix, const Subset& s);

// Conductance upper bound on the gap: gap <= conductance/(pi(S) pi(S^c)).
// Requires 0 < pi(S) < 1. No swap needed (the ratio is symmetric).
CutReport conductance_bound(const SpectralSummary& summary, const GroundDistribution& dist,
                            const SparseHermitian& matrix, const Subset& s);

// Both bounds in one report.
CutReport cut_report(const SpectralSummary& summary, const GroundDistribution& dist,
                     const SparseHermitian& matrix, const Subset& s);

struct MultiwayReport {
  std::vector<double> expansions;          // per subset
  std::vector<double> conductance_ratios;  // conductance/(pi_S pi_Sc) per subset
  double lhs = 0.0;                        // E_{m-1} - E_0 for m subsets
  double rhs_expansion = 0.0;              // 2 * diameter * max expansion
  double rhs_conductance = 0.0;            // max conductance ratio
  std::size_t binding_expansion = 0;       // argmax indices
  std::size_t binding_conductance = 0;
  bool holds_expansion = false;
  bool holds_conductance = false;
};

// Multiway generalization: m pairwise disjoint, pairwise isolated subsets
// S_0, ..., S_{m-1} give E_{m-1} - E_0 <= 2 * diameter * max_i
// pi(dS_i)/pi(S_i), and likewise for the conductance form. Preconditions
// (disjoint, isolated, 0 < pi <= 1/2) are verified and violations throw
// precondition_error.
MultiwayReport multiway_bound(const SpectralSummary& summary, const GroundDistribution& dist,
                              const SparseHermitian& matrix, const std::vector<Subset>& subsets);

// True when no off-diagonal entry above the drop tolerance links a to b.
bool isolated(const SparseHermitian& matrix, const Subset& a, const Subset& b);

// Rayleigh quotient of phi = pi(S^c) 1_S psi - pi(S) 1_{S^c} psi, a certified
// upper bound on E_1. Checks <phi|psi> = 0 and the identity
// value = E_0 + conductance/(pi(S) pi(S^c)).
double variational_certificate(const SpectralSummary& summary, const GroundDistribution& dist,
                               const SparseHermitian& matrix, const Subset& s);

}  // namespace isospec
