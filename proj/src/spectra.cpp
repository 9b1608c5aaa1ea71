#include "isospec/spectra.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include <Eigen/Eigenvalues>

#include "isospec/errors.hpp"

namespace isospec {

void canonicalize_phase(Eigen::VectorXcd& vec) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    const double mag = std::abs(vec[i]);
    if (mag > best + 1e-15) {
      best = mag;
      pivot = i;
    }
  }
  if (best <= 0.0) return;
  vec *= std::conj(vec[pivot]) / best;
}

namespace {

struct DenseEig {
  Eigen::VectorXd values;
  Eigen::VectorXcd ground;
};

DenseEig dense_eigensolve(const SparseHermitian& matrix) {
  DenseEig out;
  if (matrix.is_real()) {
    // The complex solver is several times slower; use the real path whenever
    // every stored entry is real.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix.dense().real());
    if (es.info() != Eigen::Success) throw solver_error("dense eigensolver failed");
    out.values = es.eigenvalues();
    out.ground = es.eigenvectors().col(0).cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix.dense());
    if (es.info() != Eigen::Success) throw solver_error("dense eigensolver failed");
    out.values = es.eigenvalues();
    out.ground = es.eigenvectors().col(0);
  }
  return out;
}

// Gershgorin bounds on the spectrum: [lo, hi].
std::pair<double, double> gershgorin_bounds(const SparseHermitian& matrix) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t row = 0; row < matrix.dim(); ++row) {
    const auto cols = matrix.row_cols(row);
    const auto vals = matrix.row_values(row);
    double center = 0.0, radius = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == row)
        center = vals[k].real();
      else
        radius += std::abs(vals[k]);
    }
    if (row == 0 || center - radius < lo) lo = center - radius;
    if (row == 0 || center + radius > hi) hi = center + radius;
  }
  return {lo, hi};
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& block) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(block.rows(), block.cols());
}

// Lowest n_want eigenpairs of a Hermitian operator given by matvec, using
// restarted subspace iteration with the filter (shift - A) and a Rayleigh-Ritz
// projection per restart.
struct IterativeResult {
  Eigen::VectorXd values;   // ascending, n_want entries
  Eigen::MatrixXcd vectors; // matching columns
};

IterativeResult lowest_eigenpairs(
    const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& matvec,
    std::size_t dim, int n_want, double shift, double residual_tol, int max_restarts,
    std::uint64_t seed) {
  const int block = std::min<int>(static_cast<int>(dim), n_want + 4);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd basis(static_cast<Eigen::Index>(dim), block);
  for (Eigen::Index j = 0; j < basis.cols(); ++j)
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
      basis(i, j) = Complex(gauss(rng), gauss(rng));
  basis = orthonormalize(basis);

  Eigen::VectorXcd tmp_in(static_cast<Eigen::Index>(dim)), tmp_out;
  auto apply_to_block = [&](const Eigen::MatrixXcd& in) {
    Eigen::MatrixXcd out(in.rows(), in.cols());
    for (Eigen::Index j = 0; j < in.cols(); ++j) {
      tmp_in = in.col(j);
      matvec(tmp_in, tmp_out);
      out.col(j) = tmp_out;
    }
    return out;
  };

  constexpr int kInnerPowerSteps = 4;
  for (int restart = 0; restart < max_restarts; ++restart) {
    for (int step = 0; step < kInnerPowerSteps; ++step)
      basis = orthonormalize(shift * basis - apply_to_block(basis));

    const Eigen::MatrixXcd a_basis = apply_to_block(basis);
    Eigen::MatrixXcd projected = basis.adjoint() * a_basis;
    projected = 0.5 * (projected + projected.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(projected);
    if (es.info() != Eigen::Success) throw solver_error("Rayleigh-Ritz projection failed");

    basis = basis * es.eigenvectors();  // Ritz vectors, ascending Ritz values
    const Eigen::MatrixXcd residual =
        apply_to_block(basis) - basis * es.eigenvalues().asDiagonal().toDenseMatrix().cast<Complex>();
    bool converged = true;
    for (int j = 0; j < n_want && converged; ++j)
      converged = residual.col(j).norm() <= residual_tol;

    if (converged) {
      IterativeResult result;
      result.values = es.eigenvalues().head(n_want);
      result.vectors = basis.leftCols(n_want);
      return result;
    }
  }
  throw solver_error("iterative eigensolver: restart budget exhausted");
}

}  // namespace

SpectralSummary eigensolve(const SparseHermitian& matrix, const SolverOptions& options) {
  const std::size_t dim = matrix.dim();
  if (dim < 2) throw precondition_error("eigensolve needs dimension >= 2");
  if (options.k < 1) throw precondition_error("eigensolve needs k >= 1");

  SpectralSummary summary;
  const int n_low = std::min<int>(static_cast<int>(dim), options.k + 1);

  if (dim <= options.dense_cutoff) {
    const DenseEig eig = dense_eigensolve(matrix);
    summary.solver = SolverKind::Dense;
    summary.energies.assign(eig.values.data(), eig.values.data() + n_low);
    summary.e_max = eig.values[eig.values.size() - 1];
    summary.ground = eig.ground;
  } else {
    const auto [lo, hi] = gershgorin_bounds(matrix);
    const double scale = std::max(1.0, hi - lo);
    const int budget = options.max_restarts_per_k * std::max(1, options.k);

    auto apply = [&matrix](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
      matrix.multiply(x, y);
    };
    const IterativeResult low = lowest_eigenpairs(apply, dim, n_low, hi, 1e-9 * scale,
                                                  budget, options.seed);

    auto apply_neg = [&matrix](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
      matrix.multiply(x, y);
      y = -y;
    };
    const IterativeResult top = lowest_eigenpairs(apply_neg, dim, 1, -lo, 1e-9 * scale,
                                                  budget, options.seed + 1);

    summary.solver = SolverKind::Iterative;
    summary.energies.assign(low.values.data(), low.values.data() + n_low);
    summary.e_max = -top.values[0];
    summary.ground = low.vectors.col(0);
  }

  summary.ground.normalize();
  canonicalize_phase(summary.ground);
  if (summary.energies.size() >= 2) {
    const double tol = options.degeneracy_tol * std::max(1.0, summary.diameter());
    summary.degenerate = summary.energies[1] - summary.energies[0] < tol;
  }
  return summary;
}

GroundDistribution ground_distribution(const SpectralSummary& summary, double threshold,
                                       bool allow_degenerate) {
  if (summary.degenerate && !allow_degenerate)
    throw precondition_error(
        "ground state is degenerate; the distribution is basis-dependent "
        "(pass allow_degenerate to proceed)");

  GroundDistribution dist;
  dist.threshold = threshold;
  dist.basis_dependent = summary.degenerate;
  dist.pi.resize(static_cast<std::size_t>(summary.ground.size()));
  for (Eigen::Index i = 0; i < summary.ground.size(); ++i) {
    const double p = std::norm(summary.ground[i]);
    dist.pi[static_cast<std::size_t>(i)] = p;
    if (p > threshold) dist.omega.push_back(static_cast<std::uint32_t>(i));
  }
  return dist;
}

double spectral_diameter(const SpectralSummary& summary) { return summary.diameter(); }

}  // namespace isospec
