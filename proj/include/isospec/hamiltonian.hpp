#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isospec/labels.hpp"

namespace isospec {

using Complex = std::complex<double>;

// Matrix entries with magnitude at or below this are treated as exact zeros:
// adjacency, boundaries and the minimum off-diagonal magnitude all use it.
inline constexpr double kDropTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;

// One local term of a Hamiltonian: either a Pauli string over all sites (real
// coefficient) or an explicit Hermitian block on an ordered tuple of sites.
struct LocalTerm {
  enum class Kind { PauliString, DenseBlock };

  Kind kind;
  std::string pauli;          // PauliString: one of I/X/Y/Z per site
  Complex coeff{1.0, 0.0};    // PauliString: must be real
  Eigen::MatrixXcd block;     // DenseBlock: Hermitian, dim = product of site dims
  std::vector<int> sites;     // DenseBlock: distinct site indices

  static LocalTerm pauli_string(std::string ops, double coefficient);
  static LocalTerm dense_block(Eigen::MatrixXcd matrix, std::vector<int> on_sites);
};

struct HamiltonianSpec {
  LabelScheme scheme;
  std::vector<LocalTerm> terms;

  // Throws spec_error on any violated term or scheme invariant.
  void validate() const;
};

struct BuildOptions {
  std::size_t dim_cap = std::size_t{1} << 20;
};

// Compressed-sparse-row complex Hermitian matrix. Hermiticity is certified at
// construction; entries at or below kDropTolerance are never stored.
class SparseHermitian {
 public:
  struct Triplet {
    std::uint32_t row, col;
    Complex value;
  };

  static SparseHermitian from_triplets(std::size_t dim, std::vector<Triplet> triplets);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return col_.size(); }

  std::span<const std::uint32_t> row_cols(std::size_t row) const;
  std::span<const Complex> row_values(std::size_t row) const;

  Complex entry(std::size_t row, std::size_t col) const;  // 0 if not stored
  Complex diagonal(std::size_t i) const { return entry(i, i); }

  void multiply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
  Eigen::VectorXcd multiply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd dense() const;
  bool is_real() const;  // every stored entry has negligible imaginary part

  // Off-diagonal matrix elements are real and non-positive.
  bool is_stoquastic() const;
  // The off-diagonal non-zero pattern is a connected graph (BFS).
  bool is_irreducible() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<Complex> val_;
};

// Realize the sum of local terms as a sparse Hermitian matrix in the
// spec's label-scheme basis. Deterministic entry ordering.
SparseHermitian build(const HamiltonianSpec& spec, const BuildOptions& options = {});

// All y != x with |H_{x,y}| above the drop tolerance, as basis indices.
std::vector<std::uint32_t> adjacent_indices(const SparseHermitian& matrix, std::size_t x);
// Label-level wrapper.
std::vector<std::string> adjacency(const SparseHermitian& matrix, const LabelScheme& scheme,
                                   const std::string& label);

// Gamma: minimum magnitude over non-zero off-diagonal entries.
// Throws precondition_error when the matrix is diagonal.
double offdiag_min_magnitude(const SparseHermitian& matrix);

// Parse a JSON model-spec document:
//   {"sites": [2,2,2], "terms": [{"pauli": "ZZI", "coeff": -1.0},
//    {"block": [[...]], "sites": [0,1]}], "labels": "bits"}
// labels is one of "bits", "trits", "clocked-bits" (clock register last).
// Block entries are numbers or [re, im] pairs. Unknown keys are rejected.
HamiltonianSpec parse_model_spec(const std::string& json_text);

}  // namespace isospec
