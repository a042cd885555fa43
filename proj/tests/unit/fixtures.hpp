#pragma once

// Shared game fixtures for tests. Fixtures may use the library's RNG and game
// constructors; independence matters only for the oracles.

#include <cstdint>
#include <memory>
#include <vector>

#include "gamealign/coalition.hpp"
#include "gamealign/embedding.hpp"
#include "gamealign/embedding_games.hpp"
#include "gamealign/game.hpp"
#include "gamealign/rng.hpp"

namespace fixtures {

inline gamealign::CharacteristicGame zero_game(int n) {
  return gamealign::CharacteristicGame(n, [](const gamealign::Coalition&) { return 0.0; });
}

inline gamealign::CharacteristicGame additive_game(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  auto w = std::make_shared<std::vector<double>>(std::move(weights));
  return gamealign::CharacteristicGame(n, [w](const gamealign::Coalition& c) {
    double s = 0.0;
    for (int p : c.members()) s += (*w)[static_cast<std::size_t>(p)];
    return s;
  });
}

// Unanimity game: payoff 1 iff the coalition contains every required player.
inline gamealign::CharacteristicGame unanimity_game(int n, std::uint64_t required) {
  return gamealign::CharacteristicGame(n, [required](const gamealign::Coalition& c) {
    return (c.bits() & required) == required ? 1.0 : 0.0;
  });
}

inline std::vector<std::vector<double>> random_unit_vectors(int n, int dim, std::uint64_t seed) {
  gamealign::Rng rng(seed);
  std::vector<std::vector<double>> vs;
  vs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vs.push_back(rng.unit_vector(dim));
  return vs;
}

// Mean-pairwise-cosine game over random unit vectors.
inline gamealign::CharacteristicGame random_cosine_game(int n, int dim, std::uint64_t seed) {
  return gamealign::self_modal_game(
      gamealign::EmbeddingSequence(random_unit_vectors(n, dim, seed), gamealign::Modality::Visual));
}

// Cosine game whose vectors share a common direction: x_i = u + beta * g_i,
// all unit-normalized. The shared component keeps every player's value well
// away from zero, which relative-error measurements need.
inline gamealign::CharacteristicGame aligned_cosine_game(int n, int dim, double beta,
                                                         std::uint64_t seed) {
  gamealign::Rng rng(seed);
  const std::vector<double> u = rng.unit_vector(dim);
  std::vector<std::vector<double>> vs;
  vs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> g = rng.unit_vector(dim);
    for (int k = 0; k < dim; ++k)
      g[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)] +
                                       beta * g[static_cast<std::size_t>(k)];
    vs.push_back(std::move(g));
  }
  return gamealign::self_modal_game(gamealign::EmbeddingSequence(std::move(vs), gamealign::Modality::Visual));
}

// Wraps a game with an extra player (index n) whose membership never affects
// the payoff: a planted dummy.
inline gamealign::CharacteristicGame with_dummy(const gamealign::CharacteristicGame& game) {
  const int n = game.player_count();
  auto inner = std::make_shared<gamealign::CharacteristicGame>(game);
  return gamealign::CharacteristicGame(n + 1, [inner, n](const gamealign::Coalition& c) {
    const std::uint64_t inner_mask = c.bits() & ((std::uint64_t{1} << n) - 1);
    return inner->evaluate(gamealign::Coalition(inner_mask, n));
  });
}

// Wraps a game's payoff with an evaluation counter (single-threaded use only).
inline gamealign::CharacteristicGame counted(const gamealign::CharacteristicGame& game,
                                             std::shared_ptr<long long> counter) {
  auto inner = std::make_shared<gamealign::CharacteristicGame>(game);
  return gamealign::CharacteristicGame(game.player_count(),
                                       [inner, counter](const gamealign::Coalition& c) {
                                         ++*counter;
                                         return inner->evaluate(c);
                                       });
}

}  // namespace fixtures
