#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gamealign/coalition.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/game.hpp"

namespace gamealign {

enum class ValueKind { Banzhaf, Shapley };

inline const char* to_string(ValueKind kind) {
  return kind == ValueKind::Banzhaf ? "banzhaf" : "shapley";
}

// Exact enumeration walks every subset, so 2^n payoff evaluations per player
// value. Past this player count the sampling estimators take over.
constexpr int kDefaultEnumerationCap = 22;

struct ValueVector {
  std::vector<double> values;
  ValueKind kind = ValueKind::Banzhaf;
};

struct InteractionIndexResult {
  std::pair<int, int> players;
  double value = 0.0;
  ValueKind kind = ValueKind::Banzhaf;
};

namespace detail {

inline void check_cap(int n, int cap, const char* op) {
  if (n > cap)
    throw CapExceeded(std::string(op) + ": " + std::to_string(n) +
                      " players exceeds the enumeration cap of " + std::to_string(cap));
}

inline void check_player(int player, int n, const char* op) {
  if (player < 0 || player >= n)
    throw std::invalid_argument(std::string(op) + ": player " + std::to_string(player) +
                                " out of range for n=" + std::to_string(n));
}

// Exact binomial coefficients; every value needed here (n <= 64, small k after
// the cap check) is exactly representable in a double.
inline double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(b);
}

// Visits every submask of `allowed` exactly once, ascending.
template <typename Fn>
void for_each_submask(std::uint64_t allowed, Fn&& fn) {
  std::uint64_t s = 0;
  while (true) {
    fn(s);
    if (s == allowed) break;
    s = (s - allowed) & allowed;
  }
}

}  // namespace detail

// Uniform average of the player's marginal contributions over all coalitions
// that exclude it: (1/2^(n-1)) * sum over S of [g(S u {i}) - g(S)].
inline double exact_banzhaf(const CharacteristicGame& game, int player,
                            int cap = kDefaultEnumerationCap) {
  const int n = game.player_count();
  detail::check_player(player, n, "exact_banzhaf");
  detail::check_cap(n, cap, "exact_banzhaf");

  const std::uint64_t bit = 1ULL << player;
  const std::uint64_t others = Coalition::full(n).bits() & ~bit;
  double sum = 0.0;
  detail::for_each_submask(others, [&](std::uint64_t s) {
    sum += game.evaluate(Coalition(s | bit, n)) - game.evaluate(Coalition(s, n));
  });
  return std::ldexp(sum, -(n - 1));
}

// Permutation-weighted average marginal contribution, computed by the subset
// form with weights |S|! (n-|S|-1)! / n! = 1 / (n * C(n-1, |S|)).
inline double exact_shapley(const CharacteristicGame& game, int player,
                            int cap = kDefaultEnumerationCap) {
  const int n = game.player_count();
  detail::check_player(player, n, "exact_shapley");
  detail::check_cap(n, cap, "exact_shapley");

  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    weight[static_cast<std::size_t>(s)] = 1.0 / (n * detail::binomial(n - 1, s));

  const std::uint64_t bit = 1ULL << player;
  const std::uint64_t others = Coalition::full(n).bits() & ~bit;
  double sum = 0.0;
  detail::for_each_submask(others, [&](std::uint64_t s) {
    const double marginal = game.evaluate(Coalition(s | bit, n)) - game.evaluate(Coalition(s, n));
    sum += weight[static_cast<std::size_t>(std::popcount(s))] * marginal;
  });
  return sum;
}

inline double exact_value(const CharacteristicGame& game, int player, ValueKind kind,
                          int cap = kDefaultEnumerationCap) {
  return kind == ValueKind::Banzhaf ? exact_banzhaf(game, player, cap)
                                    : exact_shapley(game, player, cap);
}

inline ValueVector exact_values(const CharacteristicGame& game, ValueKind kind,
                                int cap = kDefaultEnumerationCap) {
  ValueVector out;
  out.kind = kind;
  out.values.reserve(static_cast<std::size_t>(game.player_count()));
  for (int p = 0; p < game.player_count(); ++p)
    out.values.push_back(exact_value(game, p, kind, cap));
  return out;
}

// Pairwise interaction index: the averaged four-term bracket
//   g(S u {i,j}) + g(S) - g(S u {i}) - g(S u {j})
// over S excluding both players. Banzhaf kind averages uniformly (1/2^(n-2));
// Shapley kind weights by |S|! (n-|S|-2)! / (n-1)! = 1 / ((n-1) * C(n-2, |S|)).
inline InteractionIndexResult exact_interaction(const CharacteristicGame& game, int i, int j,
                                                ValueKind kind = ValueKind::Banzhaf,
                                                int cap = kDefaultEnumerationCap) {
  const int n = game.player_count();
  detail::check_player(i, n, "exact_interaction");
  detail::check_player(j, n, "exact_interaction");
  if (i == j) throw SamePlayer("exact_interaction: players must be distinct");
  detail::check_cap(n, cap, "exact_interaction");

  std::vector<double> weight(static_cast<std::size_t>(n - 1));
  if (kind == ValueKind::Shapley)
    for (int s = 0; s <= n - 2; ++s)
      weight[static_cast<std::size_t>(s)] = 1.0 / ((n - 1) * detail::binomial(n - 2, s));

  const std::uint64_t bi = 1ULL << i;
  const std::uint64_t bj = 1ULL << j;
  const std::uint64_t others = Coalition::full(n).bits() & ~bi & ~bj;
  double sum = 0.0;
  detail::for_each_submask(others, [&](std::uint64_t s) {
    const double bracket = game.evaluate(Coalition(s | bi | bj, n)) +
                           game.evaluate(Coalition(s, n)) -
                           game.evaluate(Coalition(s | bi, n)) -
                           game.evaluate(Coalition(s | bj, n));
    if (kind == ValueKind::Banzhaf)
      sum += bracket;
    else
      sum += weight[static_cast<std::size_t>(std::popcount(s))] * bracket;
  });

  InteractionIndexResult r;
  r.players = {i, j};
  r.kind = kind;
  r.value = kind == ValueKind::Banzhaf ? std::ldexp(sum, -(n - 2)) : sum;
  return r;
}

}  // namespace gamealign
