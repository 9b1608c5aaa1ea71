#include "isospec/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "isospec/errors.hpp"

namespace isospec {

Subset::Subset(std::vector<char> mask) : mask_(std::move(mask)) {
  count_ = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), char(1)));
}

Subset Subset::from_indices(std::size_t dim, const std::vector<std::uint32_t>& indices) {
  std::vector<char> mask(dim, 0);
  for (std::uint32_t i : indices) {
    if (i >= dim) throw precondition_error("subset index out of range");
    mask[i] = 1;
  }
  return Subset(std::move(mask));
}

Subset Subset::complement() const {
  std::vector<char> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] ? 0 : 1;
  return Subset(std::move(mask));
}

std::vector<std::uint32_t> Subset::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

Subset boundary(const SparseHermitian& matrix, const Subset& s) {
  if (s.dim() != matrix.dim()) throw precondition_error("subset/matrix dimension mismatch");
  std::vector<char> mask(s.dim(), 0);
  for (std::size_t x = 0; x < s.dim(); ++x) {
    if (!s.contains(x)) continue;
    const auto cols = matrix.row_cols(x);
    const auto vals = matrix.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == x || s.contains(cols[k])) continue;
      if (std::abs(vals[k]) > kDropTolerance) {
        mask[x] = 1;
        break;
      }
    }
  }
  return Subset(std::move(mask));
}

double pi_of(const GroundDistribution& dist, const Subset& s) {
  if (s.dim() != dist.pi.size()) throw precondition_error("subset/distribution size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < dist.pi.size(); ++i)
    if (s.contains(i)) total += dist.pi[i];
  return total;
}

double pi_mask(const GroundDistribution& dist, const std::vector<char>& mask) {
  double total = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) total += dist.pi[i];
  return total;
}

double boundary_mass(const SparseHermitian& matrix, const GroundDistribution& dist,
                     const std::vector<char>& mask) {
  double total = 0.0;
  for (std::size_t x = 0; x < mask.size(); ++x) {
    if (!mask[x]) continue;
    const auto cols = matrix.row_cols(x);
    const auto vals = matrix.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] != x && !mask[cols[k]] && std::abs(vals[k]) > kDropTolerance) {
        total += dist.pi[x];
        break;
      }
  }
  return total;
}

double conductance_mask(const SpectralSummary& summary, const SparseHermitian& matrix,
                        const std::vector<char>& mask) {
  Complex flux{0.0, 0.0};
  for (std::size_t x = 0; x < mask.size(); ++x) {
    if (!mask[x]) continue;
    const auto cols = matrix.row_cols(x);
    const auto vals = matrix.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (!mask[cols[k]])
        flux += std::conj(summary.ground[static_cast<Eigen::Index>(x)]) * vals[k] *
                summary.ground[cols[k]];
  }
  return -flux.real();
}

namespace {

// -<psi| 1_S H 1_{S^c} |psi>; the imaginary part must vanish.
double cut_conductance(const SpectralSummary& summary, const SparseHermitian& matrix,
                       const Subset& s) {
  Complex flux{0.0, 0.0};
  for (std::size_t x = 0; x < matrix.dim(); ++x) {
    if (!s.contains(x)) continue;
    const auto cols = matrix.row_cols(x);
    const auto vals = matrix.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (s.contains(cols[k])) continue;
      flux += std::conj(summary.ground[static_cast<Eigen::Index>(x)]) * vals[k] *
              summary.ground[cols[k]];
    }
  }
  const Complex value = -flux;
  if (std::abs(value.imag()) > 1e-10)
    throw precondition_error("conductance has a non-negligible imaginary part");
  return value.real();
}

double gap_of(const SpectralSummary& summary) {
  if (summary.energies.size() < 2) throw precondition_error("summary lacks the first excited energy");
  return summary.energies[1] - summary.energies[0];
}

void fill_expansion(CutReport& report, const SpectralSummary& summary,
                    const GroundDistribution& dist, const SparseHermitian& matrix) {
  const Subset* side = &report.subset;
  Subset flipped;
  double pi_side = report.pi_S;
  if (pi_side > 0.5) {
    flipped = report.subset.complement();
    side = &flipped;
    pi_side = report.pi_complement;
    report.swapped = true;
  }
  if (pi_side <= 0.0) throw precondition_error("expansion bound needs pi(S) > 0");
  report.pi_boundary = pi_of(dist, boundary(matrix, *side));
  report.expansion = report.pi_boundary / pi_side;
  report.bound_thm1 = 2.0 * summary.diameter() * report.expansion;
  report.slack_thm1 = report.bound_thm1 - gap_of(summary);
}

void fill_conductance(CutReport& report, const SpectralSummary& summary,
                      const SparseHermitian& matrix) {
  if (report.pi_S <= 0.0 || report.pi_complement <= 0.0)
    throw precondition_error("conductance bound needs 0 < pi(S) < 1");
  report.conductance = cut_conductance(summary, matrix, report.subset);
  report.bound_thm3 = report.conductance / (report.pi_S * report.pi_complement);
  report.slack_thm3 = report.bound_thm3 - gap_of(summary);
}

CutReport base_report(const SpectralSummary& summary, const GroundDistribution& dist,
                      const Subset& s) {
  if (s.dim() != static_cast<std::size_t>(summary.ground.size()))
    throw precondition_error("subset/summary dimension mismatch");
  CutReport report;
  report.subset = s;
  report.pi_S = pi_of(dist, s);
  report.pi_complement = 1.0 - report.pi_S;
  report.basis_dependent = dist.basis_dependent;
  return report;
}

}  // namespace

CutReport expansion_bound(const SpectralSummary& summary, const GroundDistribution& dist,
                          const SparseHermitian& matrix, const Subset& s) {
  CutReport report = base_report(summary, dist, s);
  fill_expansion(report, summary, dist, matrix);
  return report;
}

CutReport conductance_bound(const SpectralSummary& summary, const GroundDistribution& dist,
                            const SparseHermitian& matrix, const Subset& s) {
  CutReport report = base_report(summary, dist, s);
  fill_conductance(report, summary, matrix);
  return report;
}

CutReport cut_report(const SpectralSummary& summary, const GroundDistribution& dist,
                     const SparseHermitian& matrix, const Subset& s) {
  CutReport report = base_report(summary, dist, s);
  fill_expansion(report, summary, dist, matrix);
  fill_conductance(report, summary, matrix);
  return report;
}

bool isolated(const SparseHermitian& matrix, const Subset& a, const Subset& b) {
  for (std::size_t x = 0; x < matrix.dim(); ++x) {
    if (!a.contains(x)) continue;
    const auto cols = matrix.row_cols(x);
    const auto vals = matrix.row_values(x);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] != x && b.contains(cols[k]) && std::abs(vals[k]) > kDropTolerance) return false;
  }
  return true;
}

MultiwayReport multiway_bound(const SpectralSummary& summary, const GroundDistribution& dist,
                              const SparseHermitian& matrix, const std::vector<Subset>& subsets) {
  const std::size_t k = subsets.size();
  if (k == 0) throw precondition_error("multiway bound needs at least one subset");
  if (summary.energies.size() < k)
    throw precondition_error("summary lacks enough eigenvalues for the multiway bound");

  for (std::size_t i = 0; i < k; ++i) {
    const double pi_i = pi_of(dist, subsets[i]);
    if (pi_i <= 0.0 || pi_i > 0.5 + 1e-12)
      throw precondition_error("multiway bound needs 0 < pi(S_i) <= 1/2 for every subset");
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t x = 0; x < matrix.dim(); ++x)
        if (subsets[i].contains(x) && subsets[j].contains(x))
          throw precondition_error("multiway subsets must be pairwise disjoint");
      if (!isolated(matrix, subsets[i], subsets[j]))
        throw precondition_error("multiway subsets must be pairwise isolated");
    }
  }

  // m subsets S_0, ..., S_{m-1} bound the (m-1)-th excited energy.
  MultiwayReport report;
  report.lhs = summary.energies[k - 1] - summary.energies[0];
  for (const Subset& s : subsets) {
    const CutReport cut = cut_report(summary, dist, matrix, s);
    report.expansions.push_back(cut.expansion);
    report.conductance_ratios.push_back(cut.bound_thm3);
  }
  const auto max_exp = std::max_element(report.expansions.begin(), report.expansions.end());
  const auto max_cond =
      std::max_element(report.conductance_ratios.begin(), report.conductance_ratios.end());
  report.binding_expansion = static_cast<std::size_t>(max_exp - report.expansions.begin());
  report.binding_conductance =
      static_cast<std::size_t>(max_cond - report.conductance_ratios.begin());
  report.rhs_expansion = 2.0 * summary.diameter() * *max_exp;
  report.rhs_conductance = *max_cond;
  const double tol = 1e-9 * std::max(1.0, summary.diameter());
  report.holds_expansion = report.lhs <= report.rhs_expansion + tol;
  report.holds_conductance = report.lhs <= report.rhs_conductance + tol;
  return report;
}

double variational_certificate(const SpectralSummary& summary, const GroundDistribution& dist,
                               const SparseHermitian& matrix, const Subset& s) {
  const double pi_s = pi_of(dist, s);
  const double pi_c = 1.0 - pi_s;
  if (pi_s <= 0.0 || pi_c <= 0.0)
    throw precondition_error("variational certificate needs 0 < pi(S) < 1");
  if (summary.degenerate)
    throw precondition_error("variational certificate needs a non-degenerate ground state");

  Eigen::VectorXcd phi(summary.ground.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    phi[i] = (s.contains(static_cast<std::size_t>(i)) ? pi_c : -pi_s) * summary.ground[i];

  const double norm2 = phi.squaredNorm();
  if (norm2 < 1e-14) throw precondition_error("trial vector has negligible norm");
  if (std::abs(summary.ground.dot(phi)) > 1e-10)
    throw precondition_error("trial vector is not orthogonal to the ground state");

  const Complex quad = phi.dot(matrix.multiply(phi));
  const double value = quad.real() / norm2;

  const double identity = summary.ground_energy() +
                          cut_conductance(summary, matrix, s) / (pi_s * pi_c);
  const double scale = std::max({1.0, std::abs(value), std::abs(identity)});
  if (std::abs(value - identity) > 1e-9 * scale)
    throw precondition_error("variational certificate failed its closed-form identity");
  return value;
}

}  // namespace isospec
