#include "isospec/projector.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include <Eigen/Eigenvalues>

#include "isospec/errors.hpp"

namespace isospec {

SparseHermitian build_G(const SpectralSummary& summary, const SparseHermitian& matrix) {
  const double diam = summary.diameter();
  if (diam <= 1e-12 * std::max(1.0, std::abs(summary.e_max)))
    throw precondition_error("zero spectral diameter: G is undefined");

  std::vector<SparseHermitian::Triplet> triplets;
  for (std::size_t row = 0; row < matrix.dim(); ++row) {
    const auto cols = matrix.row_cols(row);
    const auto vals = matrix.row_values(row);
    for (std::size_t k = 0; k < cols.size(); ++k)
      triplets.push_back({static_cast<std::uint32_t>(row), cols[k], -vals[k] / diam});
    triplets.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row),
                        Complex(summary.e_max / diam, 0.0)});
  }
  return SparseHermitian::from_triplets(matrix.dim(), std::move(triplets));
}

ProjectorOperator build_P(const SparseHermitian& g, const SpectralSummary& summary,
                          const GroundDistribution& dist) {
  if (summary.degenerate)
    throw precondition_error("P needs a non-degenerate ground state");
  if (dist.omega.empty()) throw precondition_error("P needs a non-empty support");

  ProjectorOperator p;
  p.omega_ = dist.omega;
  p.omega_full_ = p.omega_.size() == g.dim();
  std::vector<std::int64_t> local(g.dim(), -1);
  for (std::size_t a = 0; a < p.omega_.size(); ++a) {
    const std::uint32_t x = p.omega_[a];
    if (std::norm(summary.ground[x]) <= dist.threshold)
      throw precondition_error("amplitude below the support threshold inside Omega");
    local[x] = static_cast<std::int64_t>(a);
    p.pi_.push_back(dist.pi[x]);
  }

  p.row_ptr_.assign(p.omega_.size() + 1, 0);
  for (std::size_t a = 0; a < p.omega_.size(); ++a) {
    const std::uint32_t x = p.omega_[a];
    const auto cols = g.row_cols(x);
    const auto vals = g.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (local[cols[k]] < 0) continue;
      p.col_.push_back(static_cast<std::uint32_t>(local[cols[k]]));
      p.val_.push_back(summary.ground[cols[k]] / summary.ground[x] * vals[k]);
    }
    p.row_ptr_[a + 1] = p.col_.size();
  }

  p.stoquastic_ = true;
  for (std::size_t row = 0; row < g.dim() && p.stoquastic_; ++row)
    for (const Complex v : g.row_values(row))
      if (std::abs(v.imag()) > kDropTolerance || v.real() < -kDropTolerance) {
        p.stoquastic_ = false;
        break;
      }

  try {
    p.gamma_ = offdiag_min_magnitude(g);
  } catch (const precondition_error&) {
    p.gamma_ = 0.0;
  }

  // Connectivity of the off-diagonal pattern restricted to Omega.
  {
    const std::size_t m = p.omega_.size();
    std::vector<char> seen(m, 0);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const std::size_t a = frontier.front();
      frontier.pop();
      for (std::size_t k = p.row_ptr_[a]; k < p.row_ptr_[a + 1]; ++k) {
        const std::uint32_t b = p.col_[k];
        if (b == a || seen[b]) continue;
        seen[b] = 1;
        ++reached;
        frontier.push(b);
      }
    }
    p.irreducible_ = reached == m;
  }
  return p;
}

std::span<const std::uint32_t> ProjectorOperator::row_cols(std::size_t local_row) const {
  return {col_.data() + row_ptr_[local_row], row_ptr_[local_row + 1] - row_ptr_[local_row]};
}

std::span<const Complex> ProjectorOperator::row_values(std::size_t local_row) const {
  return {val_.data() + row_ptr_[local_row], row_ptr_[local_row + 1] - row_ptr_[local_row]};
}

Complex ProjectorOperator::entry(std::size_t local_row, std::size_t local_col) const {
  const auto cols = row_cols(local_row);
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (cols[k] == local_col) return row_values(local_row)[k];
  return {0.0, 0.0};
}

QuasiMarkovReport verify_quasi_markov(const ProjectorOperator& p) {
  QuasiMarkovReport report;
  const std::size_t m = p.size();
  std::vector<Complex> column_sums(m, Complex{0.0, 0.0});
  for (std::size_t a = 0; a < m; ++a) {
    const auto cols = p.row_cols(a);
    const auto vals = p.row_values(a);
    Complex row_sum{0.0, 0.0};
    for (std::size_t k = 0; k < cols.size(); ++k) {
      row_sum += vals[k];
      column_sums[cols[k]] += p.pi()[a] * vals[k];
      const Complex forward = p.pi()[a] * vals[k];
      const Complex backward = p.pi()[cols[k]] * p.entry(cols[k], a);
      report.max_detailed_balance_dev =
          std::max(report.max_detailed_balance_dev, std::abs(forward - std::conj(backward)));
    }
    report.max_row_sum_dev = std::max(report.max_row_sum_dev, std::abs(row_sum - 1.0));
  }
  for (std::size_t b = 0; b < m; ++b)
    report.max_stationarity_dev =
        std::max(report.max_stationarity_dev, std::abs(column_sums[b] - p.pi()[b]));
  report.ok = report.max_row_sum_dev <= 1e-10 && report.max_detailed_balance_dev <= 1e-12 &&
              report.max_stationarity_dev <= 1e-10;
  return report;
}

double dirichlet_form(const ProjectorOperator& p, const Eigen::VectorXcd& f) {
  Complex total{0.0, 0.0};
  for (std::size_t a = 0; a < p.size(); ++a) {
    const auto cols = p.row_cols(a);
    const auto vals = p.row_values(a);
    for (std::size_t k = 0; k < cols.size(); ++k)
      total += p.pi()[a] * vals[k] *
               std::norm(f[static_cast<Eigen::Index>(a)] - f[cols[k]]);
  }
  return 0.5 * total.real();
}

double dirichlet_direct(const ProjectorOperator& p, const Eigen::VectorXcd& f) {
  Complex total{0.0, 0.0};
  for (std::size_t a = 0; a < p.size(); ++a) {
    const auto cols = p.row_cols(a);
    const auto vals = p.row_values(a);
    Complex pf{0.0, 0.0};
    for (std::size_t k = 0; k < cols.size(); ++k) pf += vals[k] * f[cols[k]];
    total += p.pi()[a] * std::conj(f[static_cast<Eigen::Index>(a)]) *
             (f[static_cast<Eigen::Index>(a)] - pf);
  }
  return total.real();
}

double variance_pi(const std::vector<double>& pi, const Eigen::VectorXcd& f) {
  double total = 0.0;
  for (std::size_t a = 0; a < pi.size(); ++a)
    total += pi[a] * std::norm(f[static_cast<Eigen::Index>(a)]);
  return total;
}

double variance_pairwise(const std::vector<double>& pi, const Eigen::VectorXcd& f) {
  double total = 0.0;
  for (std::size_t a = 0; a < pi.size(); ++a)
    for (std::size_t b = 0; b < pi.size(); ++b)
      total += pi[a] * pi[b] * std::norm(f[static_cast<Eigen::Index>(a)] -
                                         f[static_cast<Eigen::Index>(b)]);
  return 0.5 * total;
}

double rayleigh_gap(const ProjectorOperator& p, const Eigen::VectorXcd& f) {
  Complex mean{0.0, 0.0};
  for (std::size_t a = 0; a < p.size(); ++a)
    mean += p.pi()[a] * f[static_cast<Eigen::Index>(a)];
  if (std::abs(mean) > 1e-12)
    throw precondition_error("rayleigh_gap needs a pi-centered test function");
  const double denom = variance_pairwise(p.pi(), f);
  if (denom < 1e-14) throw precondition_error("rayleigh_gap: zero variance denominator");
  return dirichlet_form(p, f) / denom;
}

OmegaSpectrum omega_spectrum(const SparseHermitian& g, const GroundDistribution& dist) {
  const std::size_t m = dist.omega.size();
  if (m == 0) throw precondition_error("empty support");

  Eigen::MatrixXcd restricted = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                                       static_cast<Eigen::Index>(m));
  std::vector<std::int64_t> local(g.dim(), -1);
  for (std::size_t a = 0; a < m; ++a) local[dist.omega[a]] = static_cast<std::int64_t>(a);
  for (std::size_t a = 0; a < m; ++a) {
    const auto cols = g.row_cols(dist.omega[a]);
    const auto vals = g.row_values(dist.omega[a]);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (local[cols[k]] >= 0)
        restricted(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(local[cols[k]])) =
            vals[k];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(restricted);
  if (es.info() != Eigen::Success) throw solver_error("dense eigensolver failed on the restriction");

  OmegaSpectrum spectrum;
  spectrum.p.resize(m);
  spectrum.functions.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const Eigen::Index src = static_cast<Eigen::Index>(m - 1 - k);  // descending order
    spectrum.p[k] = es.eigenvalues()[src];
    for (std::size_t a = 0; a < m; ++a) {
      const double amp = std::sqrt(dist.pi[dist.omega[a]]);
      spectrum.functions(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
          es.eigenvectors()(static_cast<Eigen::Index>(a), src) / amp;
    }
  }
  return spectrum;
}

InterlacingReport interlacing_check(const SpectralSummary& summary, const SparseHermitian& g,
                                    const GroundDistribution& dist) {
  const OmegaSpectrum spectrum = omega_spectrum(g, dist);
  const double diam = summary.diameter();

  InterlacingReport report;
  report.omega_full = dist.omega.size() == g.dim();
  const std::size_t levels = std::min(summary.energies.size(), spectrum.p.size());
  for (std::size_t k = 0; k < levels; ++k) {
    report.lhs.push_back((summary.energies[k] - summary.energies[0]) / diam);
    report.rhs.push_back(1.0 - spectrum.p[k]);
    report.max_violation = std::max(report.max_violation, report.lhs[k] - report.rhs[k]);
  }
  if (spectrum.p.size() > 1) report.delta_P = 1.0 - spectrum.p[1];
  if (summary.energies.size() > 1)
    report.equality_gap_dev =
        std::abs((summary.energies[1] - summary.energies[0]) / diam - report.delta_P);
  report.ok = report.max_violation <= 1e-9 &&
              (!report.omega_full || report.equality_gap_dev <= 1e-9);
  return report;
}

double stoquastic_cheeger_lower(const SpectralSummary& summary, const GroundDistribution& dist,
                                const SparseHermitian& matrix, const Subset& s) {
  if (!matrix.is_stoquastic())
    throw precondition_error("stoquastic Cheeger bound needs a stoquastic matrix");
  if (!matrix.is_irreducible())
    throw precondition_error("stoquastic Cheeger bound needs an irreducible matrix");
  const double pi_s = pi_of(dist, s);
  if (pi_s <= 0.0 || pi_s > 0.5 + 1e-12)
    throw precondition_error("stoquastic Cheeger bound needs 0 < pi(S) <= 1/2");

  const double gamma = offdiag_min_magnitude(matrix);
  const double diam = summary.diameter();
  // Under the non-negative-spectrum convention ||H|| = E_max; a matrix with
  // E_0 < 0 is implicitly shifted by -E_0, making ||H|| the diameter (Gamma
  // and the boundary are shift-invariant).
  const double norm_h = summary.ground_energy() >= 0.0 ? summary.e_max : diam;
  const double expansion = pi_of(dist, boundary(matrix, s)) / pi_s;
  return std::pow(gamma, 4) / (2.0 * std::pow(norm_h, 4) * diam) * expansion * expansion;
}

double min_edge_amplitude_ratio(const SpectralSummary& summary, const GroundDistribution& dist,
                                const SparseHermitian& matrix) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < matrix.dim(); ++x) {
    if (dist.pi[x] <= dist.threshold) continue;
    const auto cols = matrix.row_cols(x);
    const auto vals = matrix.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == x || std::abs(vals[k]) <= kDropTolerance) continue;
      if (dist.pi[cols[k]] <= dist.threshold) continue;
      best = std::min(best, std::abs(summary.ground[cols[k]]) /
                                std::abs(summary.ground[static_cast<Eigen::Index>(x)]));
    }
  }
  return best;
}

namespace {

// Q_G(S) for S given as a local-index mask: Re sum_{x in S, y not in S} pi_x P_{x,y}.
double local_flux(const ProjectorOperator& p, const std::vector<char>& mask) {
  Complex flux{0.0, 0.0};
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (!mask[a]) continue;
    const auto cols = p.row_cols(a);
    const auto vals = p.row_values(a);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (!mask[cols[k]]) flux += p.pi()[a] * vals[k];
  }
  return flux.real();
}

}  // namespace

ViolationReport naive_cheeger_violation(const SpectralSummary& summary,
                                        const GroundDistribution& dist, const SparseHermitian& g,
                                        const ProjectorOperator& p) {
  const std::size_t m = p.size();
  ViolationReport report;
  report.phi = std::numeric_limits<double>::infinity();
  std::vector<char> best_mask;

  auto consider = [&](const std::vector<char>& mask, double pi_s) {
    if (pi_s <= 0.0 || pi_s > 0.5 + 1e-12) return;
    const double ratio = local_flux(p, mask) / pi_s;
    if (ratio < report.phi) {
      report.phi = ratio;
      best_mask = mask;
    }
  };

  if (m <= 22) {
    std::vector<char> mask(m, 0);
    for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << m); ++bits) {
      double pi_s = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        mask[a] = (bits >> a) & 1 ? 1 : 0;
        if (mask[a]) pi_s += p.pi()[a];
      }
      consider(mask, pi_s);
    }
  } else {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p.pi()[a] > p.pi()[b]; });
    std::vector<char> mask(m, 0);
    double pi_s = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      mask[order[i]] = 1;
      pi_s += p.pi()[order[i]];
      consider(mask, pi_s);
    }
  }

  for (std::size_t a = 0; a < m; ++a)
    if (!best_mask.empty() && best_mask[a]) report.best.push_back(p.omega()[a]);

  const OmegaSpectrum spectrum = omega_spectrum(g, dist);
  report.delta_P = spectrum.p.size() > 1 ? 1.0 - spectrum.p[1] : 0.0;
  const double half_phi_sq = 0.5 * report.phi * report.phi;
  report.factor = report.delta_P > 0.0 ? half_phi_sq / report.delta_P
                                       : std::numeric_limits<double>::infinity();
  if (summary.energies.size() > 1) {
    report.gap_ratio = (summary.energies[1] - summary.energies[0]) / summary.diameter();
    report.factor_vs_gap_ratio = report.gap_ratio > 0.0
                                     ? half_phi_sq / report.gap_ratio
                                     : std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace isospec
