#include "isospec/hamiltonian.hpp"

#include <algorithm>
#include <optional>
#include <queue>

#include <json.hpp>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

bool nearly_real(Complex v) { return std::abs(v.imag()) <= kDropTolerance; }

void check_hermitian_block(const Eigen::MatrixXcd& block) {
  if (block.rows() != block.cols()) throw spec_error("dense block is not square");
  const double dev = (block - block.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTolerance) throw spec_error("dense block is not Hermitian");
}

}  // namespace

LocalTerm LocalTerm::pauli_string(std::string ops, double coefficient) {
  LocalTerm term;
  term.kind = Kind::PauliString;
  term.pauli = std::move(ops);
  term.coeff = Complex(coefficient, 0.0);
  return term;
}

LocalTerm LocalTerm::dense_block(Eigen::MatrixXcd matrix, std::vector<int> on_sites) {
  LocalTerm term;
  term.kind = Kind::DenseBlock;
  term.block = std::move(matrix);
  term.sites = std::move(on_sites);
  return term;
}

void HamiltonianSpec::validate() const {
  const auto& dims = scheme.site_dims();
  for (const auto& term : terms) {
    if (term.kind == LocalTerm::Kind::PauliString) {
      if (!nearly_real(term.coeff)) throw spec_error("pauli-string coefficient must be real");
      if (term.pauli.size() != dims.size())
        throw spec_error("pauli string length does not match site count");
      for (std::size_t i = 0; i < term.pauli.size(); ++i) {
        const char op = term.pauli[i];
        if (op != 'I' && op != 'X' && op != 'Y' && op != 'Z')
          throw spec_error(std::string("invalid pauli character '") + op + "'");
        if (op != 'I' && dims[i] != 2)
          throw spec_error("pauli operator on a non-qubit site");
      }
    } else {
      check_hermitian_block(term.block);
      if (term.sites.empty()) throw spec_error("dense block needs at least one site");
      std::size_t block_dim = 1;
      std::vector<int> seen = term.sites;
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw spec_error("dense block sites must be distinct");
      for (int s : term.sites) {
        if (s < 0 || s >= static_cast<int>(dims.size()))
          throw spec_error("dense block site index out of range");
        block_dim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(s)]);
      }
      if (block_dim != static_cast<std::size_t>(term.block.rows()))
        throw spec_error("dense block dimension does not match its site tuple");
    }
  }
}

SparseHermitian SparseHermitian::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseHermitian m;
  m.dim_ = dim;
  m.row_ptr_.assign(dim + 1, 0);
  m.col_.reserve(triplets.size());
  m.val_.reserve(triplets.size());

  std::size_t i = 0;
  for (std::size_t row = 0; row < dim; ++row) {
    while (i < triplets.size() && triplets[i].row == row) {
      const std::uint32_t col = triplets[i].col;
      if (col >= dim) throw spec_error("triplet column out of range");
      Complex sum{0.0, 0.0};
      for (; i < triplets.size() && triplets[i].row == row && triplets[i].col == col; ++i)
        sum += triplets[i].value;
      if (std::abs(sum) > kDropTolerance) {
        m.col_.push_back(col);
        m.val_.push_back(sum);
      }
    }
    m.row_ptr_[row + 1] = m.col_.size();
  }
  if (i < triplets.size()) throw spec_error("triplet row out of range");

  for (std::size_t row = 0; row < dim; ++row) {
    const auto cols = m.row_cols(row);
    const auto vals = m.row_values(row);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Complex mirror = m.entry(cols[k], row);
      if (std::abs(vals[k] - std::conj(mirror)) > kHermitianTolerance)
        throw spec_error("matrix is not Hermitian");
    }
  }
  return m;
}

std::span<const std::uint32_t> SparseHermitian::row_cols(std::size_t row) const {
  return {col_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
}

std::span<const Complex> SparseHermitian::row_values(std::size_t row) const {
  return {val_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
}

Complex SparseHermitian::entry(std::size_t row, std::size_t col) const {
  const auto cols = row_cols(row);
  const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(col));
  if (it == cols.end() || *it != col) return {0.0, 0.0};
  return val_[row_ptr_[row] + static_cast<std::size_t>(it - cols.begin())];
}

void SparseHermitian::multiply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  y.setZero(static_cast<Eigen::Index>(dim_));
  for (std::size_t row = 0; row < dim_; ++row) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      acc += val_[k] * x[col_[k]];
    y[static_cast<Eigen::Index>(row)] = acc;
  }
}

Eigen::VectorXcd SparseHermitian::multiply(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y;
  multiply(x, y);
  return y;
}

Eigen::MatrixXcd SparseHermitian::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                              static_cast<Eigen::Index>(dim_));
  for (std::size_t row = 0; row < dim_; ++row)
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      m(static_cast<Eigen::Index>(row), col_[k]) = val_[k];
  return m;
}

bool SparseHermitian::is_real() const {
  return std::all_of(val_.begin(), val_.end(), nearly_real);
}

bool SparseHermitian::is_stoquastic() const {
  for (std::size_t row = 0; row < dim_; ++row)
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
      if (col_[k] == row) continue;
      if (!nearly_real(val_[k]) || val_[k].real() > kDropTolerance) return false;
    }
  return true;
}

bool SparseHermitian::is_irreducible() const {
  std::vector<char> seen(dim_, 0);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t row = frontier.front();
    frontier.pop();
    for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
      const std::uint32_t col = col_[k];
      if (col == row || seen[col]) continue;
      seen[col] = 1;
      ++reached;
      frontier.push(col);
    }
  }
  return reached == dim_;
}

namespace {

void add_pauli_triplets(const LabelScheme& scheme, const LocalTerm& term,
                        std::vector<SparseHermitian::Triplet>& out) {
  const std::size_t dim = scheme.dim();
  const std::size_t n = scheme.num_sites();
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = x;
    Complex phase = term.coeff;
    for (std::size_t site = 0; site < n; ++site) {
      const char op = term.pauli[site];
      if (op == 'I') continue;
      const int bit = scheme.digit(x, site);
      const std::size_t stride = scheme.stride(site);
      switch (op) {
        case 'X':
          y = bit ? y - stride : y + stride;
          break;
        case 'Y':
          y = bit ? y - stride : y + stride;
          phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
          break;
        case 'Z':
          if (bit) phase = -phase;
          break;
      }
    }
    out.push_back({static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x), phase});
  }
}

void add_block_triplets(const LabelScheme& scheme, const LocalTerm& term,
                        std::vector<SparseHermitian::Triplet>& out) {
  const std::size_t dim = scheme.dim();
  const std::size_t n_block = term.sites.size();
  const auto& dims = scheme.site_dims();

  // Mixed-radix strides within the block's local index (site order as listed).
  std::vector<std::size_t> local_stride(n_block, 1);
  for (std::size_t i = n_block; i-- > 1;)
    local_stride[i - 1] =
        local_stride[i] * static_cast<std::size_t>(dims[static_cast<std::size_t>(term.sites[i])]);

  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t local_col = 0;
    for (std::size_t i = 0; i < n_block; ++i)
      local_col +=
          static_cast<std::size_t>(scheme.digit(x, static_cast<std::size_t>(term.sites[i]))) *
          local_stride[i];
    for (std::size_t local_row = 0;
         local_row < static_cast<std::size_t>(term.block.rows()); ++local_row) {
      const Complex v = term.block(static_cast<Eigen::Index>(local_row),
                                   static_cast<Eigen::Index>(local_col));
      if (std::abs(v) <= kDropTolerance) continue;
      std::size_t y = x;
      for (std::size_t i = 0; i < n_block; ++i) {
        const auto site = static_cast<std::size_t>(term.sites[i]);
        const int old_digit = scheme.digit(x, site);
        const int new_digit = static_cast<int>(local_row / local_stride[i] %
                                               static_cast<std::size_t>(dims[site]));
        y += (static_cast<std::size_t>(new_digit) - static_cast<std::size_t>(old_digit)) *
             scheme.stride(site);
      }
      out.push_back({static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x), v});
    }
  }
}

}  // namespace

SparseHermitian build(const HamiltonianSpec& spec, const BuildOptions& options) {
  spec.validate();
  if (spec.scheme.dim() > options.dim_cap)
    throw spec_error("Hamiltonian dimension exceeds the configured cap");

  std::vector<SparseHermitian::Triplet> triplets;
  for (const auto& term : spec.terms) {
    if (term.kind == LocalTerm::Kind::PauliString)
      add_pauli_triplets(spec.scheme, term, triplets);
    else
      add_block_triplets(spec.scheme, term, triplets);
  }
  return SparseHermitian::from_triplets(spec.scheme.dim(), std::move(triplets));
}

std::vector<std::uint32_t> adjacent_indices(const SparseHermitian& matrix, std::size_t x) {
  std::vector<std::uint32_t> out;
  const auto cols = matrix.row_cols(x);
  const auto vals = matrix.row_values(x);
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (cols[k] != x && std::abs(vals[k]) > kDropTolerance) out.push_back(cols[k]);
  return out;
}

std::vector<std::string> adjacency(const SparseHermitian& matrix, const LabelScheme& scheme,
                                   const std::string& label) {
  std::vector<std::string> out;
  for (std::uint32_t y : adjacent_indices(matrix, scheme.index_of(label)))
    out.push_back(scheme.label_of(y));
  return out;
}

double offdiag_min_magnitude(const SparseHermitian& matrix) {
  double best = -1.0;
  for (std::size_t row = 0; row < matrix.dim(); ++row) {
    const auto cols = matrix.row_cols(row);
    const auto vals = matrix.row_values(row);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == row) continue;
      const double mag = std::abs(vals[k]);
      if (best < 0.0 || mag < best) best = mag;
    }
  }
  if (best < 0.0) throw precondition_error("matrix has no off-diagonal structure");
  return best;
}

namespace {

Complex parse_scalar(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw spec_error(std::string(what) + " must be a number or an [re, im] pair");
}

void reject_unknown_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      throw spec_error("unknown key in model spec: " + key);
  }
}

}  // namespace

HamiltonianSpec parse_model_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw spec_error(std::string("model spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw spec_error("model spec must be a JSON object");
  reject_unknown_keys(doc, {"sites", "terms", "labels"});
  if (!doc.contains("sites") || !doc.contains("terms") || !doc.contains("labels"))
    throw spec_error("model spec needs 'sites', 'terms' and 'labels'");

  if (!doc["sites"].is_array() || doc["sites"].empty())
    throw spec_error("'sites' must be a non-empty array of local dimensions");
  std::vector<int> dims;
  for (const auto& d : doc["sites"]) {
    if (!d.is_number_integer()) throw spec_error("'sites' entries must be integers");
    dims.push_back(d.get<int>());
  }

  const std::string labels = doc["labels"].is_string() ? doc["labels"].get<std::string>() : "";
  auto require_dims = [&](int expected, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i)
      if (dims[i] != expected)
        throw spec_error("'sites' dimensions do not match the '" + labels + "' label scheme");
  };

  std::optional<LabelScheme> scheme;
  if (labels == "bits") {
    require_dims(2, dims.size());
    scheme = LabelScheme::bits(static_cast<int>(dims.size()));
  } else if (labels == "trits") {
    require_dims(3, dims.size());
    scheme = LabelScheme::trits(static_cast<int>(dims.size()));
  } else if (labels == "clocked-bits") {
    if (dims.size() < 2) throw spec_error("clocked-bits needs qubit sites plus a clock register");
    require_dims(2, dims.size() - 1);
    scheme = LabelScheme::clocked_bits(static_cast<int>(dims.size()) - 1, dims.back());
  } else {
    throw spec_error("'labels' must be \"bits\", \"trits\" or \"clocked-bits\"");
  }

  if (!doc["terms"].is_array()) throw spec_error("'terms' must be an array");
  std::vector<LocalTerm> terms;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object()) throw spec_error("each term must be a JSON object");
    if (t.contains("pauli")) {
      reject_unknown_keys(t, {"pauli", "coeff"});
      if (!t["pauli"].is_string()) throw spec_error("'pauli' must be a string");
      const Complex c = t.contains("coeff") ? parse_scalar(t["coeff"], "'coeff'") : Complex{1.0, 0.0};
      if (std::abs(c.imag()) > kDropTolerance)
        throw spec_error("pauli-string coefficient must be real");
      terms.push_back(LocalTerm::pauli_string(t["pauli"].get<std::string>(), c.real()));
    } else if (t.contains("block")) {
      reject_unknown_keys(t, {"block", "sites"});
      if (!t.contains("sites") || !t["sites"].is_array())
        throw spec_error("block term needs a 'sites' array");
      std::vector<int> sites;
      for (const auto& s : t["sites"]) {
        if (!s.is_number_integer()) throw spec_error("block 'sites' entries must be integers");
        sites.push_back(s.get<int>());
      }
      const auto& rows = t["block"];
      if (!rows.is_array() || rows.empty()) throw spec_error("'block' must be a non-empty matrix");
      const std::size_t n = rows.size();
      Eigen::MatrixXcd block(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n)
          throw spec_error("'block' must be a square matrix");
        for (std::size_t c = 0; c < n; ++c)
          block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              parse_scalar(rows[r][c], "block entry");
      }
      terms.push_back(LocalTerm::dense_block(std::move(block), std::move(sites)));
    } else {
      throw spec_error("each term needs either 'pauli' or 'block'");
    }
  }

  HamiltonianSpec spec{*scheme, std::move(terms)};
  spec.validate();
  return spec;
}

}  // namespace isospec
