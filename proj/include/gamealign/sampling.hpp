#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gamealign/coalition.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/game.hpp"
#include "gamealign/rng.hpp"
#include "gamealign/values.hpp"

namespace gamealign {

struct SamplingPlan {
  int sample_count = 5500;
  std::uint64_t seed = 0;
  ValueKind kind = ValueKind::Banzhaf;
};

// Exact enumeration as a compute-mode choice, for call sites that take either.
struct Exact {
  int cap = kDefaultEnumerationCap;
};

using ComputeMode = std::variant<Exact, SamplingPlan>;

struct EstimateReport {
  double estimate = 0.0;
  int sample_count = 0;
  double standard_error = 0.0;
};

namespace detail {

inline void check_plan(const SamplingPlan& plan, const char* op) {
  if (plan.sample_count < 1)
    throw std::invalid_argument(std::string(op) + ": sample_count must be at least 1, got " +
                                std::to_string(plan.sample_count));
}

inline void check_kind(const SamplingPlan& plan, ValueKind expected, const char* op) {
  if (plan.kind != expected)
    throw std::invalid_argument(std::string(op) + ": plan.kind must be " + to_string(expected));
}

// Streaming mean/variance (Welford). Exact-zero inputs keep the mean at
// exactly 0.0, which several contracts rely on.
class Welford {
 public:
  void add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / count_;
    m2_ += d * (x - mean_);
  }

  EstimateReport report() const {
    EstimateReport r;
    r.estimate = mean_;
    r.sample_count = static_cast<int>(count_);
    r.standard_error =
        count_ > 1 ? std::sqrt(std::max(m2_, 0.0) / (count_ - 1)) / std::sqrt(count_) : 0.0;
    return r;
  }

 private:
  long long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace detail

// Monte Carlo Banzhaf value: coalitions S excluding the player are drawn with
// independent 1/2 inclusion, which is exactly the uniform measure the Banzhaf
// average is taken over, so the plain sample mean is unbiased.
inline EstimateReport sampled_banzhaf(const CharacteristicGame& game, int player,
                                      const SamplingPlan& plan) {
  const int n = game.player_count();
  detail::check_player(player, n, "sampled_banzhaf");
  detail::check_plan(plan, "sampled_banzhaf");
  detail::check_kind(plan, ValueKind::Banzhaf, "sampled_banzhaf");

  const std::uint64_t bit = 1ULL << player;
  const std::uint64_t others = Coalition::full(n).bits() & ~bit;
  Rng rng(plan.seed);
  detail::Welford acc;
  for (int k = 0; k < plan.sample_count; ++k) {
    const std::uint64_t s = rng.subset_bits(others);
    acc.add(game.evaluate(Coalition(s | bit, n)) - game.evaluate(Coalition(s, n)));
  }
  return acc.report();
}

// Monte Carlo Shapley value via uniform random permutations: the player's
// marginal contribution to its predecessors is averaged.
inline EstimateReport sampled_shapley(const CharacteristicGame& game, int player,
                                      const SamplingPlan& plan) {
  const int n = game.player_count();
  detail::check_player(player, n, "sampled_shapley");
  detail::check_plan(plan, "sampled_shapley");
  detail::check_kind(plan, ValueKind::Shapley, "sampled_shapley");

  const std::uint64_t bit = 1ULL << player;
  Rng rng(plan.seed);
  detail::Welford acc;
  for (int k = 0; k < plan.sample_count; ++k) {
    const std::vector<int> perm = rng.permutation(n);
    std::uint64_t before = 0;
    for (int p : perm) {
      if (p == player) break;
      before |= 1ULL << p;
    }
    acc.add(game.evaluate(Coalition(before | bit, n)) - game.evaluate(Coalition(before, n)));
  }
  return acc.report();
}

// Monte Carlo pairwise interaction. The Banzhaf kind draws S with independent
// 1/2 inclusion. The Shapley kind draws |S| uniformly from 0..n-2 and then a
// uniform subset of that size; the draw probability then equals the exact
// weight 1/((n-1) * C(n-2,|S|)), so the plain mean of the bracket is unbiased.
inline EstimateReport sampled_interaction(const CharacteristicGame& game, int i, int j,
                                          const SamplingPlan& plan) {
  const int n = game.player_count();
  detail::check_player(i, n, "sampled_interaction");
  detail::check_player(j, n, "sampled_interaction");
  if (i == j) throw SamePlayer("sampled_interaction: players must be distinct");
  detail::check_plan(plan, "sampled_interaction");

  const std::uint64_t bi = 1ULL << i;
  const std::uint64_t bj = 1ULL << j;
  const std::uint64_t others = Coalition::full(n).bits() & ~bi & ~bj;
  std::vector<int> other_players;
  for (int p = 0; p < n; ++p)
    if (p != i && p != j) other_players.push_back(p);

  Rng rng(plan.seed);
  detail::Welford acc;
  for (int k = 0; k < plan.sample_count; ++k) {
    std::uint64_t s = 0;
    if (plan.kind == ValueKind::Banzhaf) {
      s = rng.subset_bits(others);
    } else {
      const int size = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      for (int p : rng.subset_of_size(other_players, size)) s |= 1ULL << p;
    }
    acc.add(game.evaluate(Coalition(s | bi | bj, n)) + game.evaluate(Coalition(s, n)) -
            game.evaluate(Coalition(s | bi, n)) - game.evaluate(Coalition(s | bj, n)));
  }
  return acc.report();
}

inline EstimateReport sampled_value(const CharacteristicGame& game, int player,
                                    const SamplingPlan& plan) {
  return plan.kind == ValueKind::Banzhaf ? sampled_banzhaf(game, player, plan)
                                         : sampled_shapley(game, player, plan);
}

// A sweep target is either a single player or an (i, j) interaction pair.
using SweepTarget = std::variant<int, std::pair<int, int>>;

struct SweepRow {
  int count = 0;
  double mean_rel_error = 0.0;
  double std_rel_error = 0.0;
};

// Relative-error floor: targets with a tiny exact value would otherwise turn
// sampling noise into unbounded relative error.
constexpr double kRelativeErrorFloor = 1e-9;

// Measures estimator convergence against the exact enumeration oracle. Every
// (seed, target) stream is derived once from the target index, independent of
// the sample count, so larger counts extend the same sample stream rather than
// drawing a fresh one; errors across counts are therefore directly comparable.
inline std::vector<SweepRow> convergence_sweep(const CharacteristicGame& game,
                                               const std::vector<SweepTarget>& targets,
                                               const std::vector<int>& counts,
                                               const std::vector<std::uint64_t>& seeds,
                                               ValueKind kind = ValueKind::Banzhaf,
                                               int cap = kDefaultEnumerationCap) {
  if (targets.empty()) throw std::invalid_argument("convergence_sweep: no targets");
  if (counts.empty()) throw std::invalid_argument("convergence_sweep: no sample counts");
  if (seeds.empty()) throw std::invalid_argument("convergence_sweep: no seeds");
  for (int c : counts)
    if (c < 1)
      throw std::invalid_argument("convergence_sweep: sample counts must be at least 1, got " +
                                  std::to_string(c));

  std::vector<double> exact;
  exact.reserve(targets.size());
  for (const auto& t : targets) {
    if (std::holds_alternative<int>(t))
      exact.push_back(exact_value(game, std::get<int>(t), kind, cap));
    else {
      const auto [i, j] = std::get<std::pair<int, int>>(t);
      exact.push_back(exact_interaction(game, i, j, kind, cap).value);
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(counts.size());
  for (int count : counts) {
    detail::Welford errs;
    for (std::uint64_t seed : seeds) {
      for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        SamplingPlan plan;
        plan.sample_count = count;
        plan.seed = derive_seed(seed, static_cast<std::uint64_t>(ti) + 1);
        plan.kind = kind;
        double est = 0.0;
        if (std::holds_alternative<int>(targets[ti]))
          est = sampled_value(game, std::get<int>(targets[ti]), plan).estimate;
        else {
          const auto [i, j] = std::get<std::pair<int, int>>(targets[ti]);
          est = sampled_interaction(game, i, j, plan).estimate;
        }
        errs.add(std::abs(est - exact[ti]) / std::max(std::abs(exact[ti]), kRelativeErrorFloor));
      }
    }
    const EstimateReport r = errs.report();
    SweepRow row;
    row.count = count;
    row.mean_rel_error = r.estimate;
    // Spread of the per-stream relative errors (not the error of their mean).
    row.std_rel_error = r.standard_error * std::sqrt(static_cast<double>(r.sample_count));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gamealign
