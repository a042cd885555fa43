#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gamealign/coalition.hpp"
#include "gamealign/errors.hpp"

namespace gamealign {

// An evaluatable set function over coalitions of n players. Payoff functions
// must be deterministic (equal coalitions yield bitwise-equal payoffs) and
// must map the empty coalition to zero; every factory in this library does.
//
// Groups of players can be merged into a singular hypothetical player with
// reduce_with_union(). The game remembers which base players each current
// player stands for, so unions chain and remain expressible in the original
// index space.
class CharacteristicGame {
 public:
  using PayoffFn = std::function<double(const Coalition&)>;

  CharacteristicGame(int player_count, PayoffFn payoff)
      : n_(player_count), payoff_(std::move(payoff)) {
    if (n_ < 1 || n_ > Coalition::kMaxPlayers)
      throw std::invalid_argument("CharacteristicGame: player count must be in [1, 64]");
    base_n_ = n_;
    base_of_player_.reserve(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p)
      base_of_player_.push_back(Coalition::of({p}, n_));
  }

  int player_count() const { return n_; }

  double evaluate(const Coalition& coalition) const {
    if (coalition.player_count() != n_)
      throw std::invalid_argument("CharacteristicGame: coalition sized for " +
                                  std::to_string(coalition.player_count()) +
                                  " players, game has " + std::to_string(n_));
    return payoff_(coalition);
  }

  // Groups merged so far, each expressed over the original player space.
  const std::vector<Coalition>& unions() const { return unions_; }

  // The original players a current player stands for (a singleton unless the
  // player is a hypothetical union player).
  const Coalition& base_players_of(int player) const {
    return base_of_player_.at(static_cast<std::size_t>(player));
  }

  bool is_union_player(int player) const { return base_players_of(player).size() > 1; }

 private:
  friend CharacteristicGame reduce_with_union(const CharacteristicGame&, const Coalition&);

  int n_;
  PayoffFn payoff_;
  int base_n_ = 0;
  std::vector<Coalition> base_of_player_;  // current index -> base players
  std::vector<Coalition> unions_;          // base-space groups, pairwise disjoint
};

// Merges the given group of players into one hypothetical player. The group's
// members disappear as individuals; the union player is appended as the last
// player index, and its presence in a coalition means all group members are
// present. Throws OverlappingUnion when the group touches a previously merged
// group.
inline CharacteristicGame reduce_with_union(const CharacteristicGame& game,
                                            const Coalition& group) {
  const int n = game.player_count();
  if (group.player_count() != n)
    throw std::invalid_argument("reduce_with_union: group sized for the wrong game");
  if (group.is_empty())
    throw std::invalid_argument("reduce_with_union: group must be nonempty");
  for (int p : group.members()) {
    if (game.is_union_player(p))
      throw OverlappingUnion("reduce_with_union: player " + std::to_string(p) +
                             " already belongs to a merged group");
  }

  const int reduced_n = n - group.size() + 1;
  const int union_player = reduced_n - 1;

  // Surviving individual players keep their relative order; the union player
  // takes the last slot.
  std::vector<int> parent_of;  // reduced index -> parent index, union slot unused
  parent_of.reserve(static_cast<std::size_t>(reduced_n));
  for (int p = 0; p < n; ++p)
    if (!group.contains(p)) parent_of.push_back(p);

  auto parent_payoff = game.payoff_;
  auto expand = [parent_of, group, n, union_player](const Coalition& s) {
    Coalition in_parent = Coalition::empty(n);
    for (int p : s.members()) {
      if (p == union_player)
        in_parent = in_parent.united(group);
      else
        in_parent = in_parent.with(parent_of[static_cast<std::size_t>(p)]);
    }
    return in_parent;
  };

  CharacteristicGame reduced(reduced_n,
                             [payoff = std::move(parent_payoff), expand](const Coalition& s) {
                               return payoff(expand(s));
                             });

  reduced.base_n_ = game.base_n_;
  reduced.base_of_player_.clear();
  Coalition group_base = Coalition::empty(game.base_n_);
  for (int p : group.members()) group_base = group_base.united(game.base_players_of(p));
  for (int p = 0; p < n; ++p)
    if (!group.contains(p)) reduced.base_of_player_.push_back(game.base_players_of(p));
  reduced.base_of_player_.push_back(group_base);
  reduced.unions_ = game.unions_;
  reduced.unions_.push_back(group_base);
  return reduced;
}

}  // namespace gamealign
