#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gamealign/coalition.hpp"
#include "gamealign/embedding.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/game.hpp"
#include "gamealign/rng.hpp"
#include "gamealign/sampling.hpp"
#include "gamealign/values.hpp"

namespace gamealign {

enum class Aggregation { MeanPool };

struct CrossModalGameSpec {
  EmbeddingSequence visual;
  EmbeddingSequence textual;
  Aggregation aggregation = Aggregation::MeanPool;
};

// Counters for payoff edge cases that are defined-but-suspicious. Pooled means
// can cancel to (near) zero only under adversarial inputs; the payoff is then
// 0 by definition and the event is counted here instead of raised.
struct CrossModalDiagnostics {
  std::atomic<long long> degenerate_pools{0};
};

// A pooled mean below this norm is treated as direction-free: cosine against
// it would amplify rounding noise into an arbitrary sign.
constexpr double kDegenerateMeanNorm = 1e-12;

// T x M grid of frame-word interaction values, optionally carrying per-frame
// sentence-level values alongside.
struct InteractionGrid {
  int frames = 0;
  int words = 0;
  std::vector<double> values;  // row-major, frames x words
  ValueKind kind = ValueKind::Banzhaf;
  std::vector<double> sentence_values;  // empty until filled, else length `frames`

  double at(int i, int j) const { return values[static_cast<std::size_t>(i * words + j)]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i * words + j)]; }
};

// Game over one modality's elements: a coalition's payoff is the mean pairwise
// cosine similarity among its members, zero for coalitions of size < 2.
// Coherent runs of similar elements score high, which is what makes the
// resulting values useful as per-element relevance signals.
inline CharacteristicGame self_modal_game(const EmbeddingSequence& seq) {
  const int n = seq.size();
  auto cos = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      (*cos)[static_cast<std::size_t>(i * n + j)] = detail::dot(seq.vector(i), seq.vector(j));

  return CharacteristicGame(n, [cos, n](const Coalition& c) {
    const std::vector<int> members = c.members();
    const int m = static_cast<int>(members.size());
    if (m < 2) return 0.0;
    double sum = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        sum += (*cos)[static_cast<std::size_t>(members[a] * n + members[b])];
    return sum / (0.5 * m * (m - 1));
  });
}

// Game over the mixed frame/word player set: payoff is the cosine between the
// mean-pooled visual members and the mean-pooled textual members, and exactly
// zero whenever either modality is absent from the coalition.
inline CharacteristicGame cross_modal_game(
    const CrossModalGameSpec& spec, std::shared_ptr<CrossModalDiagnostics> diagnostics = nullptr) {
  if (spec.visual.modality() != Modality::Visual)
    throw std::invalid_argument("cross_modal_game: visual sequence has wrong modality tag");
  if (spec.textual.modality() != Modality::Textual)
    throw std::invalid_argument("cross_modal_game: textual sequence has wrong modality tag");
  if (spec.visual.dimension() != spec.textual.dimension())
    throw ShapeMismatch("cross_modal_game: visual dimension " +
                        std::to_string(spec.visual.dimension()) + " != textual dimension " +
                        std::to_string(spec.textual.dimension()));
  const int t = spec.visual.size();
  const int m = spec.textual.size();
  if (t + m > Coalition::kMaxPlayers)
    throw std::invalid_argument("cross_modal_game: " + std::to_string(t + m) +
                                " players exceeds the limit of " +
                                std::to_string(Coalition::kMaxPlayers));

  auto visual = std::make_shared<EmbeddingSequence>(spec.visual);
  auto textual = std::make_shared<EmbeddingSequence>(spec.textual);
  const int dim = visual->dimension();

  return CharacteristicGame(t + m, [visual, textual, diagnostics, t, dim](const Coalition& c) {
    std::vector<double> vm(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> tm(static_cast<std::size_t>(dim), 0.0);
    int vcount = 0;
    int tcount = 0;
    for (int p : c.members()) {
      if (p < t) {
        const auto& v = visual->vector(p);
        for (int k = 0; k < dim; ++k) vm[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(k)];
        ++vcount;
      } else {
        const auto& q = textual->vector(p - t);
        for (int k = 0; k < dim; ++k) tm[static_cast<std::size_t>(k)] += q[static_cast<std::size_t>(k)];
        ++tcount;
      }
    }
    if (vcount == 0 || tcount == 0) return 0.0;
    for (double& x : vm) x /= vcount;
    for (double& x : tm) x /= tcount;
    const double nv = detail::norm(vm);
    const double nt = detail::norm(tm);
    if (nv < kDegenerateMeanNorm || nt < kDegenerateMeanNorm) {
      if (diagnostics) diagnostics->degenerate_pools.fetch_add(1, std::memory_order_relaxed);
      return 0.0;
    }
    return detail::dot(vm, tm) / (nv * nt);
  });
}

// Full T x M grid of pairwise frame-word interaction indices over the mixed
// player set. Exact mode memoizes all 2^n payoffs once (each grid entry walks
// the same subsets, so this turns T*M full enumerations of the embedding
// payoff into table lookups). Sampled mode derives one seed per grid entry
// from the plan seed, so the grid is deterministic and entries are
// independent; the plan's own kind field is superseded by `kind`.
inline InteractionGrid pairwise_interaction_grid(
    const CrossModalGameSpec& spec, const ComputeMode& mode,
    ValueKind kind = ValueKind::Banzhaf,
    std::shared_ptr<CrossModalDiagnostics> diagnostics = nullptr) {
  const int t = spec.visual.size();
  const int m = spec.textual.size();
  const CharacteristicGame game = cross_modal_game(spec, std::move(diagnostics));
  const int n = game.player_count();

  InteractionGrid grid;
  grid.frames = t;
  grid.words = m;
  grid.kind = kind;
  grid.values.assign(static_cast<std::size_t>(t) * m, 0.0);

  if (std::holds_alternative<Exact>(mode)) {
    const int cap = std::get<Exact>(mode).cap;
    detail::check_cap(n, cap, "pairwise_interaction_grid");
    auto table = std::make_shared<std::vector<double>>(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
      (*table)[mask] = game.evaluate(Coalition(mask, n));
    const CharacteristicGame memo(n, [table](const Coalition& c) { return (*table)[c.bits()]; });
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < m; ++j)
        grid.at(i, j) = exact_interaction(memo, i, t + j, kind, cap).value;
  } else {
    const SamplingPlan& base = std::get<SamplingPlan>(mode);
    detail::check_plan(base, "pairwise_interaction_grid");
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < m; ++j) {
        SamplingPlan plan = base;
        plan.kind = kind;
        plan.seed = derive_seed(base.seed, static_cast<std::uint64_t>(i) + 1,
                                static_cast<std::uint64_t>(j) + 1);
        grid.at(i, j) = sampled_interaction(game, i, t + j, plan).estimate;
      }
  }
  return grid;
}

// Interaction of each frame with the sentence treated as a single textual
// player, i.e. the M=1 column of the pairwise grid.
inline std::vector<double> sentence_level_interaction(const EmbeddingSequence& visual,
                                                      const std::vector<double>& sentence,
                                                      const ComputeMode& mode = Exact{},
                                                      ValueKind kind = ValueKind::Banzhaf) {
  CrossModalGameSpec spec{visual, EmbeddingSequence({sentence}, Modality::Textual)};
  const InteractionGrid grid = pairwise_interaction_grid(spec, mode, kind);
  std::vector<double> out(static_cast<std::size_t>(grid.frames));
  for (int i = 0; i < grid.frames; ++i) out[static_cast<std::size_t>(i)] = grid.at(i, 0);
  return out;
}

}  // namespace gamealign
