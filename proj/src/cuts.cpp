#include "isospec/cuts.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "isospec/errors.hpp"

namespace isospec {

CutStrategy parse_strategy(const std::string& name) {
  if (name == "exhaustive") return CutStrategy::Exhaustive;
  if (name == "sweep-amplitude") return CutStrategy::SweepAmplitude;
  if (name == "sweep-diagonal") return CutStrategy::SweepDiagonal;
  if (name == "greedy") return CutStrategy::Greedy;
  if (name == "hamming-ball") return CutStrategy::HammingBall;
  if (name == "magnetization") return CutStrategy::Magnetization;
  if (name == "clock-window") return CutStrategy::ClockWindow;
  if (name == "arc") return CutStrategy::Arc;
  throw spec_error("unknown cut strategy: " + name);
}

std::string strategy_name(CutStrategy strategy) {
  switch (strategy) {
    case CutStrategy::Exhaustive: return "exhaustive";
    case CutStrategy::SweepAmplitude: return "sweep-amplitude";
    case CutStrategy::SweepDiagonal: return "sweep-diagonal";
    case CutStrategy::Greedy: return "greedy";
    case CutStrategy::HammingBall: return "hamming-ball";
    case CutStrategy::Magnetization: return "magnetization";
    case CutStrategy::ClockWindow: return "clock-window";
    case CutStrategy::Arc: return "arc";
  }
  return "?";
}

namespace {

struct Incumbent {
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<char> mask;

  // (ratio, canonical subset order) tie-break for determinism.
  void offer(double candidate_ratio, const std::vector<char>& candidate_mask) {
    if (candidate_ratio < ratio ||
        (candidate_ratio == ratio && (mask.empty() || candidate_mask < mask))) {
      ratio = candidate_ratio;
      mask = candidate_mask;
    }
  }
};

class Search {
 public:
  Search(const SpectralSummary& summary, const GroundDistribution& dist,
         const SparseHermitian& matrix, bool conductance_objective)
      : summary_(summary), dist_(dist), matrix_(matrix), conductance_(conductance_objective),
        omega_(dist.pi.size(), 0) {
    for (std::uint32_t i : dist.omega) omega_[i] = 1;
  }

  // Candidate subsets live on the support: the mask is intersected with
  // Omega, swapped to the Omega-complement when pi > 1/2, and skipped when
  // either side of the cut is empty. Returns the evaluated ratio (infinity
  // if skipped).
  double consider(std::vector<char> mask) {
    std::size_t members = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      mask[i] = mask[i] && omega_[i] ? 1 : 0;
      members += static_cast<std::size_t>(mask[i]);
    }
    double pi_s = pi_mask(dist_, mask);
    if (pi_s > 0.5) {
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = !mask[i] && omega_[i] ? 1 : 0;
      pi_s = 1.0 - pi_s;
      members = dist_.omega.size() - members;
    }
    if (pi_s <= 0.0 || members == 0) return std::numeric_limits<double>::infinity();
    const double ratio =
        conductance_ ? conductance_mask(summary_, matrix_, mask) / (pi_s * (1.0 - pi_s))
                     : boundary_mass(matrix_, dist_, mask) / pi_s;
    best_.offer(ratio, mask);
    return ratio;
  }

  const Incumbent& best() const { return best_; }

 private:
  const SpectralSummary& summary_;
  const GroundDistribution& dist_;
  const SparseHermitian& matrix_;
  bool conductance_;
  std::vector<char> omega_;
  Incumbent best_;
};

std::vector<std::size_t> amplitude_order(const GroundDistribution& dist) {
  std::vector<std::size_t> order(dist.pi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist.pi[a] > dist.pi[b]; });
  return order;
}

std::vector<std::size_t> diagonal_order(const SparseHermitian& matrix) {
  std::vector<std::size_t> order(matrix.dim());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return matrix.diagonal(a).real() < matrix.diagonal(b).real();
  });
  return order;
}

void sweep(Search& search, const std::vector<std::size_t>& order) {
  std::vector<char> mask(order.size(), 0);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    mask[order[i]] = 1;
    search.consider(mask);
  }
}

void greedy_refine(Search& search, const GroundDistribution& dist) {
  if (search.best().mask.empty()) return;
  std::vector<char> current = search.best().mask;
  double current_ratio = search.best().ratio;
  const std::size_t dim = current.size();
  std::size_t stale = 0;
  for (std::size_t step = 0; stale < dim; step = (step + 1) % dim, ++stale) {
    std::vector<char> proposal = current;
    proposal[step] = proposal[step] ? 0 : 1;
    const double ratio = search.consider(proposal);
    if (ratio < current_ratio) {
      current = search.best().mask;
      current_ratio = ratio;
      stale = 0;
    }
  }
}

void exhaustive(Search& search, std::size_t dim) {
  if (dim > kExhaustiveCap)
    throw precondition_error("exhaustive cut search is capped at dimension 22");
  std::vector<char> mask(dim, 0);
  const std::uint64_t full = std::uint64_t{1} << dim;
  for (std::uint64_t bits = 1; bits + 1 < full; ++bits) {
    for (std::size_t i = 0; i < dim; ++i) mask[i] = (bits >> i) & 1 ? 1 : 0;
    search.consider(mask);
  }
}

CutReport run_search(const SpectralSummary& summary, const GroundDistribution& dist,
                     const SparseHermitian& matrix, const CutSearchConfig& config,
                     bool conductance_objective) {
  Search search(summary, dist, matrix, conductance_objective);
  switch (config.strategy) {
    case CutStrategy::Exhaustive:
      exhaustive(search, matrix.dim());
      break;
    case CutStrategy::SweepAmplitude:
      sweep(search, amplitude_order(dist));
      break;
    case CutStrategy::SweepDiagonal:
      sweep(search, diagonal_order(matrix));
      break;
    case CutStrategy::Greedy:
      sweep(search, amplitude_order(dist));
      greedy_refine(search, dist);
      break;
    case CutStrategy::HammingBall:
    case CutStrategy::Magnetization:
    case CutStrategy::ClockWindow:
    case CutStrategy::Arc:
      if (config.designated.empty())
        throw precondition_error("strategy '" + strategy_name(config.strategy) +
                                 "' needs the model's designated cut family");
      for (const Subset& s : config.designated) search.consider(s.mask());
      break;
  }
  if (search.best().mask.empty())
    throw precondition_error("cut search found no admissible subset");
  return cut_report(summary, dist, matrix, Subset(search.best().mask));
}

}  // namespace

CutReport min_expansion(const SpectralSummary& summary, const GroundDistribution& dist,
                        const SparseHermitian& matrix, const CutSearchConfig& config) {
  return run_search(summary, dist, matrix, config, false);
}

CutReport min_conductance(const SpectralSummary& summary, const GroundDistribution& dist,
                          const SparseHermitian& matrix, const CutSearchConfig& config) {
  return run_search(summary, dist, matrix, config, true);
}

std::vector<Subset> isolated_family(const SparseHermitian& matrix, const GroundDistribution& dist,
                                    std::size_t want) {
  const std::size_t dim = matrix.dim();
  // region id per basis index; -1 unclaimed
  std::vector<int> claim(dim, -1);
  std::vector<std::vector<std::uint32_t>> regions;
  std::vector<double> region_pi;

  auto touches_other = [&](std::size_t x, int self) {
    for (std::uint32_t y : adjacent_indices(matrix, x))
      if (claim[y] >= 0 && claim[y] != self) return true;
    return false;
  };

  // Seed on high-pi labels that keep a one-layer gap to earlier seeds.
  for (std::size_t idx : amplitude_order(dist)) {
    if (regions.size() >= want) break;
    if (dist.pi[idx] <= dist.threshold) continue;
    if (claim[idx] >= 0 || touches_other(idx, -2)) continue;
    claim[idx] = static_cast<int>(regions.size());
    regions.push_back({static_cast<std::uint32_t>(idx)});
    region_pi.push_back(dist.pi[idx]);
  }

  // Grow regions by whole BFS layers, round-robin, while each layer keeps the
  // region disjoint from and non-adjacent to every other region and
  // pi(region) stays <= 1/2.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t r = 0; r < regions.size(); ++r) {
      std::set<std::uint32_t> layer;
      for (std::uint32_t x : regions[r])
        for (std::uint32_t y : adjacent_indices(matrix, x))
          if (claim[y] < 0) layer.insert(y);
      if (layer.empty()) continue;
      bool admissible = true;
      double layer_pi = 0.0;
      for (std::uint32_t y : layer) {
        if (touches_other(y, static_cast<int>(r))) {
          admissible = false;
          break;
        }
        layer_pi += dist.pi[y];
      }
      if (!admissible || region_pi[r] + layer_pi > 0.5) continue;
      for (std::uint32_t y : layer) {
        claim[y] = static_cast<int>(r);
        regions[r].push_back(y);
      }
      region_pi[r] += layer_pi;
      grew = true;
    }
  }

  std::vector<Subset> out;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::sort(regions[r].begin(), regions[r].end());
    if (region_pi[r] > 0.0 && region_pi[r] <= 0.5)
      out.push_back(Subset::from_indices(dim, regions[r]));
  }
  return out;
}

std::vector<Subset> sample_subsets(const GroundDistribution& dist, std::size_t count,
                                   std::uint64_t seed) {
  const std::size_t dim = dist.pi.size();
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  std::bernoulli_distribution coin(0.5);
  std::set<std::vector<char>> unique;
  std::vector<Subset> out;
  for (std::size_t attempt = 0; attempt < 8 * count && out.size() < count; ++attempt) {
    std::vector<char> mask(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) mask[i] = coin(rng) ? 1 : 0;
    double pi_s = pi_mask(dist, mask);
    if (pi_s > 0.5) {
      for (auto& bit : mask) bit = bit ? 0 : 1;
      pi_s = 1.0 - pi_s;
    }
    if (pi_s <= 0.0) continue;
    if (!unique.insert(mask).second) continue;
    out.emplace_back(std::move(mask));
  }
  return out;
}

std::vector<Subset> all_subsets(std::size_t dim) {
  if (dim > kExhaustiveCap) throw precondition_error("subset enumeration is capped at dimension 22");
  std::vector<Subset> out;
  std::vector<char> mask(dim, 0);
  const std::uint64_t full = std::uint64_t{1} << dim;
  for (std::uint64_t bits = 1; bits + 1 < full; ++bits) {
    for (std::size_t i = 0; i < dim; ++i) mask[i] = (bits >> i) & 1 ? 1 : 0;
    out.emplace_back(mask);
  }
  return out;
}

}  // namespace isospec
