#pragma once

#include <cstdint>
#include <vector>

#include "isospec/geometry.hpp"
#include "isospec/spectra.hpp"

namespace isospec {

// G = (E_max I - H) / (E_max - E_0): positive semidefinite, top eigenvalue 1
// with top eigenvector psi. Throws precondition_error when the spectral
// diameter vanishes (H proportional to the identity).
SparseHermitian build_G(const SpectralSummary& summary, const SparseHermitian& matrix);

// The similarity transform P = D^{-1} (1_Omega G 1_Omega) D with
// D = diag(psi): P_{x,y} = (psi_y / psi_x) G_{x,y} on the support Omega.
// Quasi-Markov despite being non-stochastic in general: rows sum to 1, pi is
// stationary, and pi_x P_{x,y} = conj(pi_y P_{y,x}).
class ProjectorOperator {
 public:
  const std::vector<std::uint32_t>& omega() const { return omega_; }  // basis indices, ascending
  std::size_t size() const { return omega_.size(); }                  // |Omega|
  const std::vector<double>& pi() const { return pi_; }               // over local indices

  // CSR rows over local (Omega) indices.
  std::span<const std::uint32_t> row_cols(std::size_t local_row) const;
  std::span<const Complex> row_values(std::size_t local_row) const;
  Complex entry(std::size_t local_row, std::size_t local_col) const;

  bool stoquastic() const { return stoquastic_; }    // all G entries real, >= 0
  bool irreducible() const { return irreducible_; }  // off-diagonal pattern connected on Omega
  bool omega_full() const { return omega_full_; }    // Omega = whole basis
  double gamma() const { return gamma_; }            // min off-diagonal magnitude of G (0 if diagonal)

  friend ProjectorOperator build_P(const SparseHermitian& g, const SpectralSummary& summary,
                                   const GroundDistribution& dist);

 private:
  std::vector<std::uint32_t> omega_;
  std::vector<double> pi_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<Complex> val_;
  bool stoquastic_ = false;
  bool irreducible_ = false;
  bool omega_full_ = false;
  double gamma_ = 0.0;
};

ProjectorOperator build_P(const SparseHermitian& g, const SpectralSummary& summary,
                          const GroundDistribution& dist);

struct QuasiMarkovReport {
  double max_row_sum_dev = 0.0;          // |sum_y P_{x,y} - 1|
  double max_detailed_balance_dev = 0.0; // |pi_x P_{x,y} - conj(pi_y P_{y,x})|
  double max_stationarity_dev = 0.0;     // |sum_x pi_x P_{x,y} - pi_y|
  bool ok = false;                       // within 1e-10 / 1e-12 / 1e-10
};

QuasiMarkovReport verify_quasi_markov(const ProjectorOperator& p);

// 1/2 sum_{x,y} pi_x P_{x,y} |f_x - f_y|^2 for f indexed over Omega.
double dirichlet_form(const ProjectorOperator& p, const Eigen::VectorXcd& f);
// Re <f, (I - P) f>_pi, the identity partner of dirichlet_form.
double dirichlet_direct(const ProjectorOperator& p, const Eigen::VectorXcd& f);

// <f, f>_pi for pi-centered f, and the pairwise half-sum form
// 1/2 sum pi_x pi_y |f_x - f_y|^2 which must agree with it.
double variance_pi(const std::vector<double>& pi, const Eigen::VectorXcd& f);
double variance_pairwise(const std::vector<double>& pi, const Eigen::VectorXcd& f);

// Dirichlet/variance ratio for pi-centered f; >= Delta_P with equality at the
// second eigenfunction. Throws on non-centered f or zero variance.
double rayleigh_gap(const ProjectorOperator& p, const Eigen::VectorXcd& f);

// Dense eigendecomposition of the Omega-restriction of G: eigenvalues p_0 >=
// p_1 >= ... (these are also the eigenvalues of P by similarity) and the
// transformed eigenfunctions f^k = D^{-1} v^k on Omega.
struct OmegaSpectrum {
  std::vector<double> p;       // descending
  Eigen::MatrixXcd functions;  // column k = f^k over local indices
};

OmegaSpectrum omega_spectrum(const SparseHermitian& g, const GroundDistribution& dist);

struct InterlacingReport {
  std::vector<double> lhs;  // (E_k - E_0) / diameter
  std::vector<double> rhs;  // 1 - p_k
  double max_violation = 0.0;
  bool omega_full = false;
  double delta_P = 0.0;           // 1 - p_1
  double equality_gap_dev = 0.0;  // |gap/diameter - delta_P|, meaningful when omega_full
  bool ok = false;
};

// Checks (E_k - E_0)/diameter <= 1 - p_k for all available k, and the
// equality of gap/diameter with Delta_P when Omega covers the whole basis.
InterlacingReport interlacing_check(const SpectralSummary& summary, const SparseHermitian& g,
                                    const GroundDistribution& dist);

// Cheeger-type lower bound for stoquastic irreducible H:
//   Gamma^4 / (2 normH^4 diameter) * (pi(dS)/pi(S))^2  <=  gap,
// with normH = E_max when E_0 >= 0 and the spectral diameter otherwise
// (the off-diagonal part, hence Gamma and dS, is shift-invariant).
double stoquastic_cheeger_lower(const SpectralSummary& summary, const GroundDistribution& dist,
                                const SparseHermitian& matrix, const Subset& s);

// Min over H-edges (x,y) of |psi_y| / |psi_x| (both endpoints in Omega).
double min_edge_amplitude_ratio(const SpectralSummary& summary, const GroundDistribution& dist,
                                const SparseHermitian& matrix);

struct ViolationReport {
  double phi = 0.0;                 // min over searched S of Q_G(S)/pi(S)
  std::vector<std::uint32_t> best;  // minimizing subset, as basis indices
  double delta_P = 0.0;             // 1 - p_1 on Omega
  double factor = 0.0;              // (phi^2 / 2) / delta_P; > 1 breaks naive Cheeger
  double gap_ratio = 0.0;           // gap / diameter, for diagnosis
  double factor_vs_gap_ratio = 0.0; // (phi^2 / 2) / gap_ratio
};

// Tests the naive Cheeger lower bound Phi^2/2 <= Delta_P, which holds for
// stoquastic G but can fail badly otherwise. Searches subsets of Omega
// exhaustively when |Omega| <= 22, by amplitude sweep otherwise.
ViolationReport naive_cheeger_violation(const SpectralSummary& summary,
                                        const GroundDistribution& dist, const SparseHermitian& g,
                                        const ProjectorOperator& p);

}  // namespace isospec
