#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamealign {

// A subset of players 0..n-1, stored as a bit set. The player index space is
// capped at 64; coalitions over larger games never arise because cross-modal
// games are evaluated pairwise or levelwise.
class Coalition {
 public:
  static constexpr int kMaxPlayers = 64;

  Coalition() = default;

  Coalition(std::uint64_t bits, int player_count) : bits_(bits), n_(player_count) {
    if (player_count < 0 || player_count > kMaxPlayers)
      throw std::invalid_argument("Coalition: player count must be in [0, 64], got " +
                                  std::to_string(player_count));
    if (player_count < kMaxPlayers && (bits >> player_count) != 0)
      throw std::invalid_argument("Coalition: member index out of range");
  }

  static Coalition empty(int player_count) { return Coalition(0, player_count); }

  static Coalition full(int player_count) {
    return Coalition(player_count == kMaxPlayers ? ~0ULL : (1ULL << player_count) - 1,
                     player_count);
  }

  static Coalition of(std::initializer_list<int> members, int player_count) {
    Coalition c = empty(player_count);
    for (int m : members) c = c.with(m);
    return c;
  }

  int player_count() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }

  bool contains(int player) const {
    check_index(player);
    return (bits_ >> player) & 1ULL;
  }

  Coalition with(int player) const {
    check_index(player);
    return Coalition(bits_ | (1ULL << player), n_);
  }

  Coalition without(int player) const {
    check_index(player);
    return Coalition(bits_ & ~(1ULL << player), n_);
  }

  Coalition united(const Coalition& other) const {
    if (other.n_ != n_) throw std::invalid_argument("Coalition: mismatched player counts");
    return Coalition(bits_ | other.bits_, n_);
  }

  bool intersects(const Coalition& other) const { return (bits_ & other.bits_) != 0; }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  friend bool operator==(const Coalition& a, const Coalition& b) {
    return a.bits_ == b.bits_ && a.n_ == b.n_;
  }

 private:
  void check_index(int player) const {
    if (player < 0 || player >= n_)
      throw std::invalid_argument("Coalition: player index " + std::to_string(player) +
                                  " out of range for n=" + std::to_string(n_));
  }

  std::uint64_t bits_ = 0;
  int n_ = 0;
};

}  // namespace gamealign
