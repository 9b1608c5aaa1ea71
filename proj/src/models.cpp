#include "isospec/models.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

int popcount_of(const LabelScheme& scheme, std::size_t idx) {
  int count = 0;
  for (std::size_t site = 0; site < scheme.num_sites(); ++site) count += scheme.digit(idx, site);
  return count;
}

Subset hamming_ball(const LabelScheme& scheme, int radius) {
  std::vector<char> mask(scheme.dim(), 0);
  for (std::size_t idx = 0; idx < scheme.dim(); ++idx)
    if (popcount_of(scheme, idx) <= radius) mask[idx] = 1;
  return Subset(std::move(mask));
}

std::string pauli_at(int n, int site, char op) {
  std::string s(static_cast<std::size_t>(n), 'I');
  s[static_cast<std::size_t>(site)] = op;
  return s;
}

std::string pauli_pair(int n, int a, int b, char op) {
  std::string s(static_cast<std::size_t>(n), 'I');
  s[static_cast<std::size_t>(a)] = op;
  s[static_cast<std::size_t>(b)] = op;
  return s;
}

}  // namespace

ModelInstance transverse_ising(int n, double gamma, double alpha, bool ring) {
  if (n < 1) throw spec_error("transverse_ising needs n >= 1");
  HamiltonianSpec spec{LabelScheme::bits(n), {}};
  if (gamma != 0.0)
    for (int i = 0; i < n; ++i)
      spec.terms.push_back(LocalTerm::pauli_string(pauli_at(n, i, 'X'), -gamma));
  if (alpha != 0.0) {
    for (int i = 0; i + 1 < n; ++i)
      spec.terms.push_back(LocalTerm::pauli_string(pauli_pair(n, i, i + 1, 'Z'), -alpha));
    if (ring && n >= 3)
      spec.terms.push_back(LocalTerm::pauli_string(pauli_pair(n, n - 1, 0, 'Z'), -alpha));
  }
  if (spec.terms.empty())  // all couplings zero: keep the matrix well-defined
    spec.terms.push_back(LocalTerm::pauli_string(std::string(static_cast<std::size_t>(n), 'I'), 0.0));

  ModelInstance model{"tim", std::move(spec), {}, {}};
  model.params = {{"n", double(n)}, {"gamma", gamma}, {"alpha", alpha}, {"ring", ring ? 1.0 : 0.0}};
  std::vector<Subset> balls;
  for (int k = 0; k < n; ++k) balls.push_back(hamming_ball(model.spec.scheme, k));
  model.cut_families["hamming-ball"] = std::move(balls);
  {
    std::vector<char> mask(model.spec.scheme.dim(), 0);
    for (std::size_t idx = 0; idx < model.spec.scheme.dim(); ++idx)
      if (2 * popcount_of(model.spec.scheme, idx) > n) mask[idx] = 1;  // <z|M|z> < 0
    model.cut_families["magnetization"] = {Subset(std::move(mask))};
  }
  return model;
}

ModelInstance ghz_parent(int n, double gamma, int k_local) {
  if (n < 2) throw spec_error("ghz_parent needs n >= 2");
  if (k_local < 1) throw spec_error("ghz_parent needs k_local >= 1");
  HamiltonianSpec spec{LabelScheme::bits(n), {}};
  for (int i = 0; i + 1 < n; ++i)
    spec.terms.push_back(LocalTerm::pauli_string(pauli_pair(n, i, i + 1, 'Z'), -1.0));
  if (gamma != 0.0)
    for (int i = 0; i < n; ++i)
      spec.terms.push_back(LocalTerm::pauli_string(pauli_at(n, i, 'X'), -gamma));

  ModelInstance model{"ghz", std::move(spec), {}, {}};
  model.params = {{"n", double(n)}, {"gamma", gamma}, {"k_local", double(k_local)}};
  std::vector<Subset> balls;
  for (int j = 1; j * k_local < n; ++j)
    balls.push_back(hamming_ball(model.spec.scheme, j * k_local));
  model.cut_families["hamming-ball"] = std::move(balls);
  return model;
}

namespace {

void check_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw spec_error("gate matrix is not square");
  const Eigen::MatrixXcd delta =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (delta.cwiseAbs().maxCoeff() > 1e-10) throw spec_error("gate matrix is not unitary");
}

}  // namespace

ModelInstance history_state(const std::vector<Gate>& circuit, int n_qubits, int padding) {
  if (n_qubits < 1) throw spec_error("history_state needs at least one qubit");
  if (padding < 0) throw spec_error("padding must be non-negative");

  std::vector<Gate> gates = circuit;
  for (int r = 0; r < padding; ++r)
    gates.push_back({Eigen::MatrixXcd::Identity(2, 2), {0}});
  const int t_max = static_cast<int>(gates.size());
  if (t_max < 1) throw spec_error("history_state needs at least one gate");

  for (const Gate& gate : gates) {
    check_unitary(gate.u);
    if (gate.sites.empty() || gate.sites.size() > 2 ||
        (gate.sites.size() == 2 && gate.sites[0] == gate.sites[1]))
      throw spec_error("gates act on one or two distinct qubits");
    for (int s : gate.sites)
      if (s < 0 || s >= n_qubits) throw spec_error("gate site out of range");
    if (gate.u.rows() != (gate.sites.size() == 1 ? 2 : 4))
      throw spec_error("gate matrix dimension does not match its site count");
  }

  const int n_times = t_max + 1;
  HamiltonianSpec spec{LabelScheme::clocked_bits(n_qubits, n_times), {}};
  const int clock_site = n_qubits;

  // H_init = sum_i |1><1|_i (x) |0><0|_clock
  for (int i = 0; i < n_qubits; ++i) {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(2 * n_times, 2 * n_times);
    block(n_times, n_times) = 1.0;  // qubit digit 1, clock 0
    spec.terms.push_back(LocalTerm::dense_block(std::move(block), {i, clock_site}));
  }

  // H_circuit(t) = 1/2 (I(x)|t><t| + I(x)|t-1><t-1| - U_t(x)|t><t-1| - U_t^+(x)|t-1><t|)
  for (int t = 1; t <= t_max; ++t) {
    const Gate& gate = gates[static_cast<std::size_t>(t - 1)];
    const Eigen::Index d = gate.u.rows();
    Eigen::MatrixXcd block =
        Eigen::MatrixXcd::Zero(d * n_times, d * n_times);
    for (Eigen::Index a = 0; a < d; ++a) {
      block(a * n_times + t, a * n_times + t) += 0.5;
      block(a * n_times + t - 1, a * n_times + t - 1) += 0.5;
      for (Eigen::Index b = 0; b < d; ++b) {
        block(a * n_times + t, b * n_times + t - 1) -= 0.5 * gate.u(a, b);
        block(b * n_times + t - 1, a * n_times + t) -= 0.5 * std::conj(gate.u(a, b));
      }
    }
    std::vector<int> sites = gate.sites;
    sites.push_back(clock_site);
    spec.terms.push_back(LocalTerm::dense_block(std::move(block), std::move(sites)));
  }

  ModelInstance model{"history", std::move(spec), {}, {}};
  model.params = {{"n", double(n_qubits)}, {"t", double(t_max)}};
  std::vector<Subset> windows;
  for (int j = 0; j + 1 < n_times; ++j) {
    std::vector<char> mask(model.spec.scheme.dim(), 0);
    for (std::size_t idx = 0; idx < model.spec.scheme.dim(); ++idx)
      if (model.spec.scheme.clock_of(idx) <= j) mask[idx] = 1;
    windows.emplace_back(std::move(mask));
  }
  model.cut_families["clock-window"] = std::move(windows);
  return model;
}

std::vector<Gate> random_circuit(int n_qubits, int n_gates, std::uint64_t seed) {
  if (n_qubits < 1 || n_gates < 1) throw spec_error("random_circuit needs n >= 1, gates >= 1");
  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n_qubits - 1);

  auto haar = [&](Eigen::Index d) {
    Eigen::MatrixXcd ginibre(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) ginibre(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
  };

  std::vector<Gate> gates;
  for (int g = 0; g < n_gates; ++g) {
    if (n_qubits == 1) {
      gates.push_back({haar(2), {0}});
    } else {
      int a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      gates.push_back({haar(4), {a, b}});
    }
  }
  return gates;
}

ModelInstance motzkin_chain(int n) {
  if (n < 2) throw spec_error("motzkin_chain needs n >= 2");
  HamiltonianSpec spec{LabelScheme::trits(n), {}};

  // Trit values: l = 0, 0 = 1, r = 2.
  {
    Eigen::MatrixXcd rr = Eigen::MatrixXcd::Zero(3, 3);
    rr(2, 2) = 1.0;  // |r><r| on the first site
    spec.terms.push_back(LocalTerm::dense_block(std::move(rr), {0}));
    Eigen::MatrixXcd ll = Eigen::MatrixXcd::Zero(3, 3);
    ll(0, 0) = 1.0;  // |l><l| on the last site
    spec.terms.push_back(LocalTerm::dense_block(std::move(ll), {n - 1}));
  }

  // Rank-1 projectors onto (|a> - |b>)/sqrt(2) per local move, pair indices
  // in the 9-dimensional two-site basis 3*left + right.
  const std::pair<int, int> moves[] = {
      {2, 4},  // lr <-> 00
      {3, 1},  // 0l <-> l0
      {5, 7},  // 0r <-> r0
  };
  for (int i = 0; i + 1 < n; ++i)
    for (const auto& [a, b] : moves) {
      Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(9, 9);
      proj(a, a) = proj(b, b) = 0.5;
      proj(a, b) = proj(b, a) = -0.5;
      spec.terms.push_back(LocalTerm::dense_block(std::move(proj), {i, i + 1}));
    }

  ModelInstance model{"motzkin", std::move(spec), {}, {}};
  model.params = {{"n", double(n)}};
  return model;
}

std::vector<std::string> motzkin_words(int n) {
  std::vector<std::string> out;
  std::string word;
  auto recurse = [&](auto&& self, int height) -> void {
    if (static_cast<int>(word.size()) == n) {
      if (height == 0) out.push_back(word);
      return;
    }
    const int remaining = n - static_cast<int>(word.size());
    for (char c : {'l', '0', 'r'}) {
      const int next = height + (c == 'l' ? 1 : c == 'r' ? -1 : 0);
      if (next < 0 || next > remaining - 1) continue;
      word.push_back(c);
      self(self, next);
      word.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

ModelInstance ring_counterexample(int n, bool perturbed) {
  if (n < 2) throw spec_error("ring_counterexample needs n >= 2");
  const int dim = 2 * n + 1;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) h(i, i + 1) = h(i + 1, i) = 0.5;
  h(0, dim - 1) = h(dim - 1, 0) = 0.5;  // (-n, n) wraparound
  if (perturbed) {
    const double delta = std::pow(2.0, -n);
    h(0, dim - 2) += delta;  // between labels -n and n-1
    h(dim - 2, 0) += delta;
  }

  HamiltonianSpec spec{LabelScheme::offset_ring(n), {}};
  spec.terms.push_back(LocalTerm::dense_block(std::move(h), {0}));

  ModelInstance model{"ring", std::move(spec), {}, {}};
  model.params = {{"n", double(n)}, {"perturbed", perturbed ? 1.0 : 0.0}};
  std::vector<Subset> arcs;
  for (int start = 0; start < dim; ++start)
    for (int len = 1; len < dim; ++len) {
      std::vector<char> mask(static_cast<std::size_t>(dim), 0);
      for (int j = 0; j < len; ++j) mask[static_cast<std::size_t>((start + j) % dim)] = 1;
      arcs.emplace_back(std::move(mask));
    }
  model.cut_families["arc"] = std::move(arcs);
  return model;
}

ModelInstance adiabatic_path(const HamiltonianSpec& driver, const HamiltonianSpec& problem,
                             double s) {
  if (s < 0.0 || s > 1.0) throw spec_error("adiabatic_path needs 0 <= s <= 1");
  if (!(driver.scheme == problem.scheme))
    throw spec_error("adiabatic_path needs matching label schemes");

  HamiltonianSpec spec{driver.scheme, {}};
  auto add_scaled = [&](const std::vector<LocalTerm>& terms, double factor) {
    if (factor == 0.0) return;
    for (LocalTerm term : terms) {
      if (term.kind == LocalTerm::Kind::PauliString)
        term.coeff *= factor;
      else
        term.block *= factor;
      spec.terms.push_back(std::move(term));
    }
  };
  add_scaled(driver.terms, 1.0 - s);
  add_scaled(problem.terms, s);
  if (spec.terms.empty())
    spec.terms.push_back(LocalTerm::pauli_string(
        std::string(driver.scheme.num_sites(), 'I'), 0.0));

  ModelInstance model{"path", std::move(spec), {}, {}};
  model.params = {{"s", s}};
  return model;
}

HamiltonianSpec transverse_driver(int n) {
  if (n < 1) throw spec_error("transverse_driver needs n >= 1");
  HamiltonianSpec spec{LabelScheme::bits(n), {}};
  spec.terms.push_back(
      LocalTerm::pauli_string(std::string(static_cast<std::size_t>(n), 'I'), 0.5 * n));
  for (int i = 0; i < n; ++i)
    spec.terms.push_back(LocalTerm::pauli_string(pauli_at(n, i, 'X'), -0.5));
  return spec;
}

HamiltonianSpec random_diagonal_problem(int n, std::uint64_t seed) {
  if (n < 1) throw spec_error("random_diagonal_problem needs n >= 1");
  std::mt19937_64 rng(seed ^ 0xbb67ae8584caa73bull);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd cost = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
  for (Eigen::Index z = 0; z < cost.rows(); ++z) cost(z, z) = uniform(rng);

  HamiltonianSpec spec{LabelScheme::bits(n), {}};
  std::vector<int> sites(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sites[static_cast<std::size_t>(i)] = i;
  spec.terms.push_back(LocalTerm::dense_block(std::move(cost), std::move(sites)));
  return spec;
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw spec_error("model parameter needs key=value: " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

class ParamReader {
 public:
  explicit ParamReader(std::map<std::string, std::string> params) : params_(std::move(params)) {}

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const auto it = params_.find(key);
    if (it == params_.end()) {
      if (fallback) return *fallback;
      throw spec_error("missing model parameter: " + key);
    }
    used_.insert(it->first);
    try {
      std::size_t pos = 0;
      const double value = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
      return value;
    } catch (const std::exception&) {
      throw spec_error("bad numeric value for parameter " + key + ": " + it->second);
    }
  }

  bool flag(const std::string& key, bool fallback) {
    const auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    used_.insert(it->first);
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw spec_error("bad boolean value for parameter " + key + ": " + it->second);
  }

  void finish() const {
    for (const auto& [key, value] : params_)
      if (!used_.count(key)) throw spec_error("unknown model parameter: " + key);
  }

 private:
  std::map<std::string, std::string> params_;
  std::set<std::string> used_;
};

}  // namespace

ModelInstance parse_model_ref(const std::string& ref) {
  const auto colon = ref.find(':');
  const std::string name = ref.substr(0, colon);
  ParamReader params(parse_params(colon == std::string::npos ? "" : ref.substr(colon + 1)));

  if (name == "tim") {
    const int n = static_cast<int>(params.number("n"));
    const double gamma = params.number("gamma", 1.0);
    const double alpha = params.number("alpha", 1.0);
    const bool ring = params.flag("ring", true);
    params.finish();
    return transverse_ising(n, gamma, alpha, ring);
  }
  if (name == "ghz") {
    const int n = static_cast<int>(params.number("n"));
    const double gamma = params.number("gamma", 0.1);
    const int k_local = static_cast<int>(params.number("k", 2.0));
    params.finish();
    return ghz_parent(n, gamma, k_local);
  }
  if (name == "history") {
    const int n = static_cast<int>(params.number("n"));
    const int t = static_cast<int>(params.number("t"));
    const bool identity = params.flag("identity", false);
    const auto seed = static_cast<std::uint64_t>(params.number("seed", 0.0));
    const int padding = static_cast<int>(params.number("padding", 0.0));
    params.finish();
    std::vector<Gate> circuit;
    if (identity)
      for (int g = 0; g < t; ++g) circuit.push_back({Eigen::MatrixXcd::Identity(2, 2), {0}});
    else
      circuit = random_circuit(n, t, seed);
    return history_state(circuit, n, padding);
  }
  if (name == "motzkin") {
    const int n = static_cast<int>(params.number("n"));
    params.finish();
    return motzkin_chain(n);
  }
  if (name == "ring") {
    const int n = static_cast<int>(params.number("n"));
    const bool perturbed = params.flag("perturbed", true);
    params.finish();
    return ring_counterexample(n, perturbed);
  }
  if (name == "path") {
    const int n = static_cast<int>(params.number("n"));
    const double s = params.number("s");
    const auto seed = static_cast<std::uint64_t>(params.number("seed", 0.0));
    params.finish();
    ModelInstance model =
        adiabatic_path(transverse_driver(n), random_diagonal_problem(n, seed), s);
    model.params["n"] = double(n);
    model.params["seed"] = double(seed);
    return model;
  }
  throw spec_error("unknown model name: " + name);
}

}  // namespace isospec
