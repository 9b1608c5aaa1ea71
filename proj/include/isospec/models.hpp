#pragma once

#include <map>
#include <string>
#include <vector>

#include "isospec/geometry.hpp"
#include "isospec/hamiltonian.hpp"

namespace isospec {

// A reproducible example system: the Hamiltonian spec plus the cut families
// designated for it. Builders are pure functions of their parameters.
struct ModelInstance {
  std::string name;
  HamiltonianSpec spec;
  std::map<std::string, double> params;
  // family name ("hamming-ball", "magnetization", "clock-window", "arc") ->
  // candidate subsets
  std::map<std::string, std::vector<Subset>> cut_families;
};

// H = -Gamma sum X_i - alpha sum Z_i Z_{i+1}, optionally with periodic
// closure. Designated cuts: hamming-ball (balls around 00...0) and
// magnetization ({z : <z|M|z> < 0}).
ModelInstance transverse_ising(int n, double gamma, double alpha, bool ring);

// Open ferromagnetic chain plus weak transverse field; for small Gamma the
// unique ground state is epsilon-close to the GHZ state (epsilon is measured
// downstream as 1 - pi({00...0, 11...1}), never assumed). Designated cuts:
// the nested Hamming balls B_{j k} around 00...0. Gamma = 0 is exactly
// degenerate; the builder permits it and spectra flags it.
ModelInstance ghz_parent(int n, double gamma, int k_local = 2);

struct Gate {
  Eigen::MatrixXcd u;      // unitary, 2x2 or 4x4
  std::vector<int> sites;  // 1 or 2 distinct qubit indices
};

// Feynman-Kitaev clock Hamiltonian of the circuit: an explicit (T+1)-level
// clock register as the last site, H_init penalizing 1-bits at t = 0 and the
// standard hopping term per gate. The unique ground state is the history
// state. padding appends identity gates. Designated cuts: clock-window
// prefixes {t <= j}.
ModelInstance history_state(const std::vector<Gate>& circuit, int n_qubits, int padding = 0);

// Haar-random 2-qubit gates (single-qubit when n_qubits == 1) on uniformly
// random site pairs; deterministic in the seed.
std::vector<Gate> random_circuit(int n_qubits, int n_gates, std::uint64_t seed);

// Spin-1 Motzkin chain: boundary projectors |r><r| on the first and |l><l| on
// the last site plus rank-1 projectors onto (|a> - |b>)/sqrt(2) for the moves
// lr <-> 00, 0l <-> l0, 0r <-> r0 on neighboring pairs. Frustration-free with
// the uniform Motzkin-path superposition as ground state. Designated cuts:
// none (sweep-amplitude applies).
ModelInstance motzkin_chain(int n);

// Single particle on a (2n+1)-site ring, labels -n..n: diagonal 1, hopping
// 1/2 between cyclic neighbors (including the (-n, n) wraparound). With
// `perturbed`, an extra +2^{-n} entry between sites -n and n-1 splits the
// degenerate ground pair. Designated cuts: contiguous arcs.
ModelInstance ring_counterexample(int n, bool perturbed);

// Convex interpolation (1-s) * driver + s * problem; schemes must match.
ModelInstance adiabatic_path(const HamiltonianSpec& driver, const HamiltonianSpec& problem,
                             double s);

// Transverse-field driver sum_i (I - X_i)/2 and a random diagonal cost
// function (uniform values in [0, 1], deterministic in the seed).
HamiltonianSpec transverse_driver(int n);
HamiltonianSpec random_diagonal_problem(int n, std::uint64_t seed);

// Model reference strings, e.g. "tim:n=8,gamma=0.5,alpha=1.0,ring=true".
// Names: tim, ghz, history (n, t, seed or identity=true), motzkin, ring,
// path (n, s, seed).
ModelInstance parse_model_ref(const std::string& ref);

// All Motzkin words of length n (for oracle tests).
std::vector<std::string> motzkin_words(int n);

}  // namespace isospec
