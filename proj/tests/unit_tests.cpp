#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "isospec/cuts.hpp"
#include "isospec/errors.hpp"
#include "isospec/geometry.hpp"
#include "isospec/hamiltonian.hpp"
#include "isospec/labels.hpp"
#include "isospec/models.hpp"
#include "isospec/projector.hpp"
#include "isospec/spectra.hpp"
#include "isospec/verify.hpp"

using namespace isospec;

namespace {

SpectralSummary solve(const SparseHermitian& h, int k = 4) {
  SolverOptions o;
  o.k = std::min<int>(k, static_cast<int>(h.dim()) - 1);
  return eigensolve(h, o);
}

}  // namespace

// ---------------------------------------------------------------- labels ----

TEST_CASE("bits labels: site 0 most significant") {
  const LabelScheme scheme = LabelScheme::bits(4);
  CHECK(scheme.dim() == 16);
  CHECK(scheme.index_of("0110") == 6);
  CHECK(scheme.label_of(6) == "0110");
  CHECK(scheme.digit(6, 0) == 0);
  CHECK(scheme.digit(6, 1) == 1);
  CHECK(scheme.digit(6, 3) == 0);
  CHECK_THROWS_AS((void)scheme.index_of("012"), spec_error);
  CHECK_THROWS_AS((void)scheme.index_of("21100"), spec_error);
}

TEST_CASE("trits labels use l, 0, r") {
  const LabelScheme scheme = LabelScheme::trits(3);
  CHECK(scheme.dim() == 27);
  CHECK(scheme.label_of(0) == "lll");
  CHECK(scheme.index_of("l0r") == 0 * 9 + 1 * 3 + 2);
  CHECK(scheme.label_of(scheme.index_of("r0l")) == "r0l");
}

TEST_CASE("clocked-bits labels: clock last and fastest-varying") {
  const LabelScheme scheme = LabelScheme::clocked_bits(3, 4);
  CHECK(scheme.dim() == 32);
  CHECK(scheme.label_of(scheme.index_of("3:010")) == "3:010");
  CHECK(scheme.clock_of(scheme.index_of("3:010")) == 3);
  // clock is the last site: consecutive indices differ in the clock value
  CHECK(scheme.index_of("1:000") == scheme.index_of("0:000") + 1);
}

TEST_CASE("offset ring labels") {
  const LabelScheme scheme = LabelScheme::offset_ring(4);
  CHECK(scheme.dim() == 9);
  CHECK(scheme.index_of("-4") == 0);
  CHECK(scheme.index_of("0") == 4);
  CHECK(scheme.label_of(8) == "4");
}

// ----------------------------------------------------------- hamiltonian ----

TEST_CASE("single-qubit Pauli matrices") {
  const LabelScheme one = LabelScheme::bits(1);
  {  // -X
    const SparseHermitian h = build({one, {LocalTerm::pauli_string("X", -1.0)}});
    CHECK(h.entry(0, 1) == Complex(-1.0, 0.0));
    CHECK(h.entry(1, 0) == Complex(-1.0, 0.0));
    CHECK(h.entry(0, 0) == Complex(0.0, 0.0));
  }
  {  // Y|0> = i|1>, Y|1> = -i|0>
    const SparseHermitian h = build({one, {LocalTerm::pauli_string("Y", 1.0)}});
    CHECK(h.entry(1, 0) == Complex(0.0, 1.0));
    CHECK(h.entry(0, 1) == Complex(0.0, -1.0));
  }
  {  // Z diagonal (-1)^b
    const SparseHermitian h = build({one, {LocalTerm::pauli_string("Z", 1.0)}});
    CHECK(h.entry(0, 0) == Complex(1.0, 0.0));
    CHECK(h.entry(1, 1) == Complex(-1.0, 0.0));
  }
}

TEST_CASE("TIM diagonal: ferromagnetic minimum at aligned states") {
  const ModelInstance model = transverse_ising(3, 0.0, 1.0, true);
  const SparseHermitian h = build(model.spec);
  const LabelScheme& scheme = model.spec.scheme;
  CHECK(h.entry(scheme.index_of("000"), scheme.index_of("000")) == Complex(-3.0, 0.0));
  CHECK(h.entry(scheme.index_of("111"), scheme.index_of("111")) == Complex(-3.0, 0.0));
  CHECK(h.entry(scheme.index_of("010"), scheme.index_of("010")) == Complex(1.0, 0.0));
}

TEST_CASE("ring model matrix entries and spectrum") {
  const ModelInstance model = ring_counterexample(2, false);
  const SparseHermitian h = build(model.spec);
  CHECK(h.dim() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(h.entry(i, i) == Complex(1.0, 0.0));
  CHECK(h.entry(0, 1) == Complex(0.5, 0.0));
  CHECK(h.entry(0, 4) == Complex(0.5, 0.0));  // (-2, 2) wraparound
  CHECK(h.entry(0, 2) == Complex(0.0, 0.0));
  // eigenvalues 1 + cos(2 pi k / 5)
  const SpectralSummary s = solve(h, 4);
  std::multiset<double> expected, got;
  for (int k = 0; k < 5; ++k) expected.insert(1.0 + std::cos(2.0 * M_PI * k / 5.0));
  for (double e : s.energies) got.insert(e);
  auto it = expected.begin();
  for (double e : got) CHECK(e == doctest::Approx(*it++).epsilon(1e-12));
  CHECK(s.degenerate);  // the unperturbed ground pair is exactly degenerate
}

TEST_CASE("minimum off-diagonal magnitude") {
  CHECK(offdiag_min_magnitude(build(transverse_ising(3, 0.7, 1.0, true).spec)) ==
        doctest::Approx(0.7).epsilon(1e-14));
  CHECK(offdiag_min_magnitude(build(ring_counterexample(2, false).spec)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(offdiag_min_magnitude(build(ring_counterexample(10, true).spec)) ==
        doctest::Approx(std::pow(2.0, -10)).epsilon(1e-14));
  // diagonal-only matrix has no off-diagonal part
  const SparseHermitian diag = build({LabelScheme::bits(1), {LocalTerm::pauli_string("Z", 1.0)}});
  CHECK_THROWS_AS((void)offdiag_min_magnitude(diag), precondition_error);
}

TEST_CASE("adjacency on the ring") {
  const ModelInstance model = ring_counterexample(2, false);
  const SparseHermitian h = build(model.spec);
  const auto neighbors = adjacency(h, model.spec.scheme, "2");
  CHECK(neighbors == std::vector<std::string>{"-2", "1"});
}

TEST_CASE("build is linear in the terms") {
  const LabelScheme scheme = LabelScheme::bits(2);
  const LocalTerm a = LocalTerm::pauli_string("XZ", 0.7);
  const LocalTerm b = LocalTerm::pauli_string("YY", -1.3);
  const SparseHermitian ha = build({scheme, {a}});
  const SparseHermitian hb = build({scheme, {b}});
  const SparseHermitian hab = build({scheme, {a, b}});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(hab.entry(i, j) - ha.entry(i, j) - hb.entry(i, j)) < 1e-15);
}

TEST_CASE("stoquastic and irreducibility predicates") {
  CHECK(build(transverse_ising(4, 0.5, 1.0, true).spec).is_stoquastic());
  CHECK(build(transverse_ising(4, 0.5, 1.0, true).spec).is_irreducible());
  // +X flips the off-diagonal sign: not stoquastic
  const SparseHermitian plus_x =
      build({LabelScheme::bits(1), {LocalTerm::pauli_string("X", 1.0)}});
  CHECK_FALSE(plus_x.is_stoquastic());
  const SparseHermitian diag = build({LabelScheme::bits(1), {LocalTerm::pauli_string("Z", 1.0)}});
  CHECK_FALSE(diag.is_irreducible());
}

TEST_CASE("from_triplets certifies Hermiticity") {
  std::vector<SparseHermitian::Triplet> bad = {{0, 1, {1.0, 0.0}}, {1, 0, {2.0, 0.0}}};
  CHECK_THROWS_AS((void)SparseHermitian::from_triplets(2, std::move(bad)), spec_error);
  std::vector<SparseHermitian::Triplet> complex_ok = {{0, 1, {0.0, 1.0}}, {1, 0, {0.0, -1.0}}};
  CHECK_NOTHROW((void)SparseHermitian::from_triplets(2, std::move(complex_ok)));
}

TEST_CASE("JSON model specs parse and reject unknown keys") {
  const std::string good = R"({"sites": [2, 2], "labels": "bits",
      "terms": [{"pauli": "ZZ", "coeff": -1.0},
                {"block": [[0.0, [0.0, -1.0]], [[0.0, 1.0], 0.0]], "sites": [1]}]})";
  const HamiltonianSpec spec = parse_model_spec(good);
  CHECK(spec.scheme.dim() == 4);
  CHECK(spec.terms.size() == 2);
  const SparseHermitian h = build(spec);
  CHECK(h.entry(0, 1) == Complex(0.0, -1.0));  // Y block on site 1

  CHECK_THROWS_AS((void)parse_model_spec(R"({"sites": [2], "labels": "bits",
      "terms": [], "extra": 1})"),
                  spec_error);
  CHECK_THROWS_AS((void)parse_model_spec(R"({"sites": [2], "labels": "bits",
      "terms": [{"pauli": "X", "coeff": 1.0, "oops": 2}]})"),
                  spec_error);
  CHECK_THROWS_AS((void)parse_model_spec(R"({"sites": [2], "labels": "nope", "terms": []})"),
                  spec_error);
}

// ---------------------------------------------------------------- spectra ----

TEST_CASE("pure transverse field: gap 2 Gamma") {
  const SpectralSummary s = solve(build(transverse_ising(3, 1.0, 0.0, true).spec));
  CHECK(s.energies[0] == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(s.energies[1] - s.energies[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.e_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_FALSE(s.degenerate);
  // uniform ground state
  const GroundDistribution d = ground_distribution(s);
  for (double p : d.pi) CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("canonical phase: largest component real positive") {
  Eigen::VectorXcd v(2);
  v << Complex(0.0, -0.8), Complex(0.6, 0.0);
  canonicalize_phase(v);
  CHECK(v[0].real() == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(std::abs(v[0].imag()) < 1e-14);
}

TEST_CASE("dense and iterative solvers agree") {
  const SparseHermitian h = build(transverse_ising(8, 0.5, 1.0, true).spec);
  SolverOptions dense_opt;
  dense_opt.k = 3;
  const SpectralSummary dense = eigensolve(h, dense_opt);
  SolverOptions iter_opt = dense_opt;
  iter_opt.dense_cutoff = 1;  // force the iterative path
  const SpectralSummary iterative = eigensolve(h, iter_opt);
  CHECK(dense.solver == SolverKind::Dense);
  CHECK(iterative.solver == SolverKind::Iterative);
  const double scale = dense.diameter();
  for (std::size_t i = 0; i < dense.energies.size(); ++i)
    CHECK(std::abs(dense.energies[i] - iterative.energies[i]) < 1e-8 * scale);
  CHECK(std::abs(dense.e_max - iterative.e_max) < 1e-8 * scale);
  for (Eigen::Index i = 0; i < dense.ground.size(); ++i)
    CHECK(std::abs(dense.ground[i] - iterative.ground[i]) < 1e-7);
}

TEST_CASE("degenerate ground space is rejected without the override") {
  const SpectralSummary s = solve(build(ghz_parent(4, 0.0, 2).spec));
  CHECK(s.degenerate);
  CHECK_THROWS_AS((void)ground_distribution(s), precondition_error);
  const GroundDistribution d = ground_distribution(s, kSupportThreshold, true);
  CHECK(d.basis_dependent);
}

TEST_CASE("stoquastic irreducible ground state has full support") {
  const SpectralSummary s = solve(build(transverse_ising(4, 0.5, 1.0, true).spec));
  const GroundDistribution d = ground_distribution(s);
  CHECK(d.omega.size() == 16);  // Perron: strictly positive amplitudes
  for (Eigen::Index i = 0; i < s.ground.size(); ++i) CHECK(s.ground[i].real() > 0.0);
}

// ----------------------------------------------------------------- models ----

TEST_CASE("motzkin chain is frustration-free with uniform path ground state") {
  {
    const ModelInstance model = motzkin_chain(2);
    const SpectralSummary s = solve(build(model.spec));
    CHECK(std::abs(s.energies[0]) < 1e-12);
    const GroundDistribution d = ground_distribution(s);
    CHECK(d.pi[model.spec.scheme.index_of("00")] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.pi[model.spec.scheme.index_of("lr")] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.omega.size() == 2);
  }
  {
    const ModelInstance model = motzkin_chain(5);
    const SpectralSummary s = solve(build(model.spec));
    CHECK(std::abs(s.energies[0]) < 1e-10);
    const GroundDistribution d = ground_distribution(s);
    const std::vector<std::string> words = motzkin_words(5);
    CHECK(words.size() == 21);  // Motzkin number M_5
    CHECK(d.omega.size() == words.size());
    for (const std::string& w : words)
      CHECK(d.pi[model.spec.scheme.index_of(w)] ==
            doctest::Approx(1.0 / 21.0).epsilon(1e-9));
  }
}

TEST_CASE("motzkin words enumerate balanced flat paths") {
  CHECK(motzkin_words(1) == std::vector<std::string>{"0"});
  const std::vector<std::string> w2 = motzkin_words(2);
  CHECK(std::set<std::string>(w2.begin(), w2.end()) == std::set<std::string>{"00", "lr"});
  CHECK(motzkin_words(3).size() == 4);
  CHECK(motzkin_words(4).size() == 9);
}

TEST_CASE("GHZ parent: ground state epsilon-close to GHZ") {
  const ModelInstance model = ghz_parent(8, 0.1, 2);
  const SpectralSummary s = solve(build(model.spec));
  const GroundDistribution d = ground_distribution(s);
  const double eps = 1.0 - d.pi[model.spec.scheme.index_of("00000000")] -
                     d.pi[model.spec.scheme.index_of("11111111")];
  CHECK(eps == doctest::Approx(0.00874456707).epsilon(1e-6));
  CHECK(s.energies[1] - s.energies[0] == doctest::Approx(1.98000016e-08).epsilon(1e-6));
}

TEST_CASE("identity-circuit history state: uniform clock, fixed register") {
  std::vector<Gate> circuit(3, Gate{Eigen::MatrixXcd::Identity(2, 2), {0}});
  const ModelInstance model = history_state(circuit, 1);
  const SparseHermitian h = build(model.spec);
  CHECK(h.dim() == 8);  // 2 qubit states x 4 clock values
  const SpectralSummary s = solve(h);
  CHECK(std::abs(s.energies[0]) < 1e-12);  // frustration-free
  const GroundDistribution d = ground_distribution(s);
  double quarter = 0.0;
  for (std::size_t i = 0; i < d.pi.size(); ++i) {
    const int t = model.spec.scheme.clock_of(i);
    const bool zero_register = model.spec.scheme.digit(i, 0) == 0;
    CHECK(d.pi[i] == doctest::Approx(zero_register ? 0.25 : 0.0).epsilon(1e-12));
    if (t == 0) quarter += d.pi[i];
  }
  CHECK(quarter == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("adiabatic path: off-diagonal scale (1-s)/2") {
  const ModelInstance model =
      adiabatic_path(transverse_driver(4), random_diagonal_problem(4, 3), 0.3);
  const SparseHermitian h = build(model.spec);
  CHECK(h.is_stoquastic());
  CHECK(h.is_irreducible());
  CHECK(offdiag_min_magnitude(h) == doctest::Approx(0.35).epsilon(1e-12));
  const SpectralSummary s = solve(h);
  CHECK(s.energies[0] >= 0.0);  // driver and problem are both non-negative
}

TEST_CASE("model references parse and reject unknown parameters") {
  const ModelInstance tim = parse_model_ref("tim:n=8,gamma=0.5,alpha=1.0,ring=true");
  CHECK(tim.spec.scheme.dim() == 256);
  CHECK(tim.params.at("gamma") == doctest::Approx(0.5));
  CHECK_THROWS_AS((void)parse_model_ref("tim:n=4,bogus=1"), spec_error);
  CHECK_THROWS_AS((void)parse_model_ref("unknown-model:n=4"), spec_error);
  const ModelInstance ring = parse_model_ref("ring:n=10,perturbed=true");
  CHECK(ring.spec.scheme.dim() == 21);
  const ModelInstance hist = parse_model_ref("history:n=2,t=4,seed=7");
  CHECK(hist.spec.scheme.dim() == 20);
}

// --------------------------------------------------------------- geometry ----

TEST_CASE("boundary and expansion with complement swap") {
  const ModelInstance model = transverse_ising(3, 1.0, 0.0, true);
  const SparseHermitian h = build(model.spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);

  const Subset single = Subset::from_indices(8, {0});
  CHECK(boundary(h, single).size() == 1);
  const CutReport small = cut_report(s, d, h, single);
  CHECK_FALSE(small.swapped);
  CHECK(small.pi_S == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(small.expansion == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(small.bound_thm1 == doctest::Approx(12.0).epsilon(1e-12));

  const CutReport large = cut_report(s, d, h, single.complement());
  CHECK(large.swapped);  // pi = 7/8 > 1/2: evaluated on the complement
  CHECK(large.expansion == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS((void)expansion_bound(s, d, h, Subset(std::vector<char>(8, 0))),
                  precondition_error);
}

TEST_CASE("conductance is real and the certificate matches the closed form") {
  const ModelInstance model = transverse_ising(6, 0.5, 1.0, true);
  const SparseHermitian h = build(model.spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const Subset& mag = model.cut_families.at("magnetization")[0];
  const CutReport cut = cut_report(s, d, h, mag);
  CHECK(cut.conductance >= 0.0);  // stoquastic: non-negative flux
  const double certificate = variational_certificate(s, d, h, mag);
  CHECK(certificate ==
        doctest::Approx(s.energies[0] + cut.bound_thm3).epsilon(1e-9));
  // the certificate upper-bounds E_1
  CHECK(certificate >= s.energies[1] - 1e-9 * s.diameter());
}

TEST_CASE("isolated subsets and the multiway report") {
  // Two exactly decoupled 2-state blocks.
  std::vector<SparseHermitian::Triplet> triplets = {
      {0, 1, {-1.0, 0.0}}, {1, 0, {-1.0, 0.0}}, {2, 3, {-1.0, 0.0}}, {3, 2, {-1.0, 0.0}}};
  const SparseHermitian h = SparseHermitian::from_triplets(4, std::move(triplets));
  const Subset a = Subset::from_indices(4, {0, 1});
  const Subset b = Subset::from_indices(4, {2, 3});
  CHECK(isolated(h, a, b));
  CHECK_FALSE(isolated(h, Subset::from_indices(4, {0}), Subset::from_indices(4, {1})));

  SpectralSummary s;
  s.energies = {-1.0, -1.0, 1.0};
  s.e_max = 1.0;
  s.degenerate = true;
  s.ground = Eigen::VectorXcd::Constant(4, Complex(0.5, 0.0));
  const GroundDistribution d = ground_distribution(s, kSupportThreshold, true);
  const MultiwayReport report = multiway_bound(s, d, h, {a, b});
  CHECK(std::abs(report.lhs) < 1e-12);
  CHECK(report.rhs_expansion == 0.0);
  CHECK(report.holds_expansion);
  CHECK(report.holds_conductance);

  // overlapping subsets are rejected
  CHECK_THROWS_AS((void)multiway_bound(s, d, h, {a, Subset::from_indices(4, {1, 2})}),
                  precondition_error);
}

// -------------------------------------------------------------- projector ----

TEST_CASE("G normalization and the quasi-Markov invariants") {
  const SparseHermitian h = build(transverse_ising(4, 0.7, 1.0, true).spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const SparseHermitian g = build_G(s, h);
  // psi is the top eigenvector of G with eigenvalue 1
  const Eigen::VectorXcd gpsi = g.multiply(s.ground);
  CHECK((gpsi - s.ground).norm() < 1e-10);

  const ProjectorOperator p = build_P(g, s, d);
  CHECK(p.stoquastic());  // TIM is stoquastic: P is a true stochastic matrix
  CHECK(p.irreducible());
  CHECK(p.omega_full());
  const QuasiMarkovReport qm = verify_quasi_markov(p);
  CHECK(qm.ok);
  CHECK(qm.max_row_sum_dev < 1e-10);
  CHECK(qm.max_detailed_balance_dev < 1e-12);
  CHECK(qm.max_stationarity_dev < 1e-10);
}

TEST_CASE("zero spectral diameter is rejected") {
  // H = identity: diameter 0
  std::vector<SparseHermitian::Triplet> triplets = {{0, 0, {1.0, 0.0}}, {1, 1, {1.0, 0.0}}};
  const SparseHermitian h = SparseHermitian::from_triplets(2, std::move(triplets));
  SpectralSummary s;
  s.energies = {1.0, 1.0};
  s.e_max = 1.0;
  s.ground = Eigen::VectorXcd::Constant(2, Complex(std::sqrt(0.5), 0.0));
  CHECK_THROWS_AS((void)build_G(s, h), precondition_error);
}

TEST_CASE("Dirichlet form basics and the Rayleigh characterization") {
  const SparseHermitian h = build(transverse_ising(4, 0.5, 1.0, true).spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const SparseHermitian g = build_G(s, h);
  const ProjectorOperator p = build_P(g, s, d);

  // constant f has zero Dirichlet energy
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Constant(p.size(), Complex(1.0, 0.0));
  CHECK(std::abs(dirichlet_form(p, ones)) < 1e-12);

  // equality at the second eigenfunction (real model)
  const OmegaSpectrum spec = omega_spectrum(g, d);
  const double delta_P = 1.0 - spec.p[1];
  const Eigen::VectorXcd f1 = spec.functions.col(1);
  CHECK(rayleigh_gap(p, f1) == doctest::Approx(delta_P).epsilon(1e-9));
  // interlacing equality when Omega is the whole basis
  const InterlacingReport inter = interlacing_check(s, g, d);
  CHECK(inter.ok);
  CHECK(inter.omega_full);
  const double gap_ratio = (s.energies[1] - s.energies[0]) / s.diameter();
  CHECK(std::abs(gap_ratio - delta_P) < 1e-9);
}

TEST_CASE("stoquastic Cheeger lower bound and the amplitude floor") {
  const ModelInstance model = transverse_ising(5, 0.5, 1.0, true);
  const SparseHermitian h = build(model.spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const double gap = s.energies[1] - s.energies[0];
  for (const Subset& ball : model.cut_families.at("hamming-ball")) {
    const double pi_s = pi_of(d, ball);
    if (pi_s <= 0.0 || pi_s > 0.5) continue;
    CHECK(stoquastic_cheeger_lower(s, d, h, ball) <= gap + 1e-9);
  }
  const double gamma = offdiag_min_magnitude(h);
  const double norm_h = s.energies[0] >= 0.0 ? s.e_max : s.diameter();
  CHECK(min_edge_amplitude_ratio(s, d, h) >= gamma / norm_h - 1e-12);
  // non-stoquastic input is rejected
  const SparseHermitian plus_x =
      build({LabelScheme::bits(1), {LocalTerm::pauli_string("X", 1.0)}});
  const SpectralSummary s2 = solve(plus_x);
  const GroundDistribution d2 = ground_distribution(s2);
  CHECK_THROWS_AS(
      (void)stoquastic_cheeger_lower(s2, d2, plus_x, Subset::from_indices(2, {0})),
      precondition_error);
}

TEST_CASE("ring counterexample breaks the naive Cheeger bound vs the gap") {
  const ModelInstance model = ring_counterexample(10, true);
  const SparseHermitian h = build(model.spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const SparseHermitian g = build_G(s, h);
  const ProjectorOperator p = build_P(g, s, d);
  CHECK(p.size() == 20);  // the node opposite the perturbation leaves Omega
  const ViolationReport report = naive_cheeger_violation(s, d, g, p);
  CHECK(report.phi == doctest::Approx(0.047610120620).epsilon(1e-9));
  CHECK(report.delta_P == doctest::Approx(0.016731770528).epsilon(1e-9));
  CHECK(report.factor == doctest::Approx(0.067737110715).epsilon(1e-9));
  // Phi^2/2 exceeds gap/diameter: the would-be lower bound fails vs Delta_H
  CHECK(report.factor_vs_gap_ratio > 1.0);
  CHECK(report.factor_vs_gap_ratio == doctest::Approx(12.14748564).epsilon(1e-8));
}

// ------------------------------------------------------------------- cuts ----

TEST_CASE("strategy names round-trip") {
  for (const char* name : {"exhaustive", "sweep-amplitude", "sweep-diagonal", "greedy",
                           "hamming-ball", "magnetization", "clock-window", "arc"})
    CHECK(strategy_name(parse_strategy(name)) == name);
  CHECK_THROWS_AS((void)parse_strategy("nope"), spec_error);
}

TEST_CASE("exhaustive search is at least as good as heuristics") {
  const ModelInstance model = transverse_ising(4, 0.7, 1.0, true);
  const SparseHermitian h = build(model.spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  CutSearchConfig exhaustive;
  exhaustive.strategy = CutStrategy::Exhaustive;
  const CutReport best = min_expansion(s, d, h, exhaustive);
  for (CutStrategy strategy :
       {CutStrategy::SweepAmplitude, CutStrategy::SweepDiagonal, CutStrategy::Greedy}) {
    CutSearchConfig config;
    config.strategy = strategy;
    CHECK(min_expansion(s, d, h, config).expansion >= best.expansion - 1e-12);
  }
  // Theorem 1/3 hold at the minima
  CHECK(best.slack_thm1 >= -1e-9 * s.diameter());
  const CutReport best_cond = min_conductance(s, d, h, exhaustive);
  CHECK(best_cond.slack_thm3 >= -1e-9 * s.diameter());
}

TEST_CASE("exhaustive search is capped at dimension 22") {
  const SparseHermitian h = build(transverse_ising(5, 0.5, 1.0, true).spec);  // dim 32
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  CutSearchConfig config;
  config.strategy = CutStrategy::Exhaustive;
  CHECK_THROWS_AS((void)min_expansion(s, d, h, config), precondition_error);
  CHECK_THROWS_AS((void)all_subsets(23), precondition_error);
}

TEST_CASE("isolated family on the GHZ parent") {
  const ModelInstance model = ghz_parent(8, 0.1, 2);
  const SparseHermitian h = build(model.spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const std::vector<Subset> family = isolated_family(h, d, 2);
  REQUIRE(family.size() == 2);
  for (const Subset& region : family) {
    const double pi_s = pi_of(d, region);
    CHECK(pi_s > 0.4);
    CHECK(pi_s <= 0.5);
  }
  CHECK(isolated(h, family[0], family[1]));
}

TEST_CASE("sampled subsets are unique, admissible, and deterministic") {
  const SparseHermitian h = build(transverse_ising(6, 0.5, 1.0, true).spec);
  const SpectralSummary s = solve(h);
  const GroundDistribution d = ground_distribution(s);
  const std::vector<Subset> a = sample_subsets(d, 200, 7);
  const std::vector<Subset> b = sample_subsets(d, 200, 7);
  CHECK(a.size() == 200);
  CHECK(a == b);
  std::set<std::vector<char>> unique;
  for (const Subset& sub : a) {
    CHECK(pi_of(d, sub) > 0.0);
    CHECK(pi_of(d, sub) <= 0.5 + 1e-12);
    unique.insert(sub.mask());
  }
  CHECK(unique.size() == a.size());
}

// ----------------------------------------------------------------- verify ----

TEST_CASE("linear fit recovers an exact line") {
  const LinearFit fit = linear_fit({1.0, 2.0, 3.0, 4.0}, {0.5, 2.5, 4.5, 6.5});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("model zoo builds and solves cleanly") {
  for (const auto& [name, model] : model_zoo()) {
    CAPTURE(name);
    const SparseHermitian h = build(model.spec);
    CHECK(h.dim() >= 2);
    const SpectralSummary s = solve(h, 1);
    CHECK_FALSE(s.degenerate);
    CHECK(s.diameter() > 0.0);
  }
}
