#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isospec/geometry.hpp"

namespace isospec {

enum class CutStrategy {
  Exhaustive,      // all subsets; dim <= 22 only
  SweepAmplitude,  // prefix cuts of the descending-pi label order
  SweepDiagonal,   // prefix cuts of the ascending-diagonal label order
  Greedy,          // single-label flips from the best sweep-amplitude cut
  HammingBall,     // a model-designated cut family (see models module)
  Magnetization,   //   "
  ClockWindow,     //   "
  Arc,             //   "
};

CutStrategy parse_strategy(const std::string& name);
std::string strategy_name(CutStrategy strategy);

struct CutSearchConfig {
  CutStrategy strategy = CutStrategy::SweepAmplitude;
  std::size_t max_subsets = 10000;  // sampling budget for randomized strategies
  std::uint64_t seed = 0;
  std::vector<Subset> designated;  // candidates for the model-designated strategies
};

inline constexpr std::size_t kExhaustiveCap = 22;

// Minimize pi(dS)/pi(S) over the strategy's candidate subsets; candidates with
// pi(S) > 1/2 are replaced by their complement first. Deterministic
// tie-breaking on (ratio, canonical subset order). Exhaustive search returns
// the true minimizer.
CutReport min_expansion(const SpectralSummary& summary, const GroundDistribution& dist,
                        const SparseHermitian& matrix, const CutSearchConfig& config);

// Same search minimizing the conductance ratio conductance/(pi(S) pi(S^c)).
CutReport min_conductance(const SpectralSummary& summary, const GroundDistribution& dist,
                          const SparseHermitian& matrix, const CutSearchConfig& config);

// Pairwise disjoint, pairwise isolated subsets with 0 < pi(S_i) <= 1/2 for the
// multiway bound: seeded on high-pi labels pairwise far apart, grown by BFS
// layers while a one-layer separator to every other region survives. May
// return fewer than `want` subsets.
std::vector<Subset> isolated_family(const SparseHermitian& matrix, const GroundDistribution& dist,
                                    std::size_t want);

// Uniformly random admissible subsets (complement-swapped to pi <= 1/2),
// deduplicated, for sampled sweeps above the exhaustive cap.
std::vector<Subset> sample_subsets(const GroundDistribution& dist, std::size_t count,
                                   std::uint64_t seed);

// All non-trivial subsets; throws above the exhaustive cap.
std::vector<Subset> all_subsets(std::size_t dim);

}  // namespace isospec
