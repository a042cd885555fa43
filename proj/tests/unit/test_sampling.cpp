#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gamealign/errors.hpp"
#include "gamealign/sampling.hpp"
#include "gamealign/values.hpp"

#include "fixtures.hpp"

using namespace gamealign;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

SamplingPlan plan_of(int count, std::uint64_t seed, ValueKind kind = ValueKind::Banzhaf) {
  SamplingPlan p;
  p.sample_count = count;
  p.seed = seed;
  p.kind = kind;
  return p;
}

}  // namespace

TEST_CASE("sampled banzhaf on the zero game is exactly zero") {
  const auto game = fixtures::zero_game(8);
  const EstimateReport r = sampled_banzhaf(game, 2, plan_of(64, 9));
  CHECK(r.estimate == 0.0);
  CHECK(r.standard_error == 0.0);
  CHECK(r.sample_count == 64);
}

TEST_CASE("sampled banzhaf on the additive game is constant") {
  const auto game = fixtures::additive_game({0.2, 0.5, 0.3});
  for (std::uint64_t seed : {1ULL, 42ULL, 1234567ULL}) {
    const EstimateReport r = sampled_banzhaf(game, 1, plan_of(100, seed));
    CHECK(near(r.estimate, 0.5, 1e-12));
    CHECK(r.standard_error <= 1e-12);
  }
}

TEST_CASE("sampled banzhaf concentrates near the exact value") {
  // Unanimity pair inside a 12-player game; the exact value comes from full
  // enumeration of the same game.
  const auto game = fixtures::unanimity_game(12, 0b011);
  const double exact = exact_banzhaf(game, 0);
  CHECK(near(exact, 0.5, 1e-12));
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    if (std::abs(sampled_banzhaf(game, 0, plan_of(5500, seed)).estimate - exact) <= 0.03) ++hits;
  CHECK(hits >= 19);
}

TEST_CASE("sampled estimates are deterministic per seed") {
  const auto game = fixtures::random_cosine_game(10, 8, 21);
  const EstimateReport a = sampled_banzhaf(game, 4, plan_of(500, 77));
  const EstimateReport b = sampled_banzhaf(game, 4, plan_of(500, 77));
  CHECK(a.estimate == b.estimate);
  CHECK(a.standard_error == b.standard_error);
  const EstimateReport c = sampled_banzhaf(game, 4, plan_of(500, 78));
  CHECK(a.estimate != c.estimate);

  const EstimateReport d = sampled_shapley(game, 4, plan_of(500, 77, ValueKind::Shapley));
  const EstimateReport e = sampled_shapley(game, 4, plan_of(500, 77, ValueKind::Shapley));
  CHECK(d.estimate == e.estimate);

  const EstimateReport f = sampled_interaction(game, 1, 5, plan_of(500, 77));
  const EstimateReport g = sampled_interaction(game, 1, 5, plan_of(500, 77));
  CHECK(f.estimate == g.estimate);
}

TEST_CASE("sampling plans are validated") {
  const auto game = fixtures::zero_game(4);
  CHECK_THROWS_AS(sampled_banzhaf(game, 0, plan_of(0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(sampled_banzhaf(game, 0, plan_of(10, 1, ValueKind::Shapley)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sampled_shapley(game, 0, plan_of(10, 1, ValueKind::Banzhaf)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sampled_banzhaf(game, 4, plan_of(10, 1)), std::invalid_argument);
}

TEST_CASE("sampled shapley on the additive game is constant") {
  const auto game = fixtures::additive_game({0.2, 0.5, 0.3});
  const EstimateReport r = sampled_shapley(game, 0, plan_of(50, 3, ValueKind::Shapley));
  CHECK(near(r.estimate, 0.2, 1e-12));
  CHECK(r.standard_error <= 1e-12);
}

TEST_CASE("sampled shapley of a dummy player is exactly zero") {
  const auto game = fixtures::with_dummy(fixtures::random_cosine_game(6, 6, 31));
  const EstimateReport r = sampled_shapley(game, 6, plan_of(200, 5, ValueKind::Shapley));
  CHECK(r.estimate == 0.0);
  CHECK(r.standard_error == 0.0);
}

TEST_CASE("sampled shapley concentrates near the exact value") {
  const auto game = fixtures::unanimity_game(10, 0b011);
  const double exact = exact_shapley(game, 0);
  CHECK(near(exact, 0.5, 1e-12));
  for (std::uint64_t seed : {2ULL, 7ULL, 19ULL})
    CHECK(near(sampled_shapley(game, 0, plan_of(5500, seed, ValueKind::Shapley)).estimate, exact,
               0.03));
}

TEST_CASE("sampled interaction on the additive game vanishes") {
  const auto game = fixtures::additive_game({0.4, -0.1, 0.7, 0.25});
  for (auto kind : {ValueKind::Banzhaf, ValueKind::Shapley}) {
    const EstimateReport r = sampled_interaction(game, 0, 2, plan_of(200, 11, kind));
    CHECK(near(r.estimate, 0.0, 1e-12));
    CHECK(r.standard_error <= 1e-12);
  }
}

TEST_CASE("sampled interaction on the pair-unanimity game is exactly one") {
  const auto game = fixtures::unanimity_game(3, 0b011);
  for (auto kind : {ValueKind::Banzhaf, ValueKind::Shapley}) {
    const EstimateReport r = sampled_interaction(game, 0, 1, plan_of(50, 13, kind));
    CHECK(r.estimate == 1.0);
    CHECK(r.standard_error == 0.0);
  }
}

TEST_CASE("sampled interaction rejects identical players") {
  CHECK_THROWS_AS(sampled_interaction(fixtures::zero_game(4), 1, 1, plan_of(10, 1)), SamePlayer);
}

TEST_CASE("sampled interaction tracks the exact value at volume") {
  // Pick the strongest pair so relative error is meaningful, then average the
  // relative error over 20 sampling seeds.
  const auto game = fixtures::aligned_cosine_game(12, 16, 1.2, 99);
  int best_i = 0;
  int best_j = 1;
  double best = 0.0;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) {
      const double v = std::abs(exact_interaction(game, i, j).value);
      if (v > best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  const double exact = exact_interaction(game, best_i, best_j).value;
  double total_rel = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double est = sampled_interaction(game, best_i, best_j, plan_of(5500, seed)).estimate;
    total_rel += std::abs(est - exact) / std::max(std::abs(exact), 1e-9);
  }
  CHECK(total_rel / 20.0 <= 0.02);
}

TEST_CASE("banzhaf estimates are unbiased") {
  // Grand mean over many independent low-volume estimates must land within
  // three pooled standard errors of the exact value.
  const auto game = fixtures::random_cosine_game(10, 8, 55);
  const int player = 3;
  const double exact = exact_banzhaf(game, player);
  const int runs = 1000;
  double grand = 0.0;
  double pooled_var = 0.0;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    const EstimateReport r = sampled_banzhaf(game, player, plan_of(200, 9000 + seed));
    grand += r.estimate;
    pooled_var += r.standard_error * r.standard_error;
  }
  grand /= runs;
  const double grand_se = std::sqrt(pooled_var) / runs;
  CHECK(std::abs(grand - exact) <= 3.0 * grand_se);
}

TEST_CASE("standard error shrinks with sample volume") {
  const auto game = fixtures::random_cosine_game(10, 8, 65);
  double se_small = 0.0;
  double se_big = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    se_small += sampled_banzhaf(game, 2, plan_of(500, seed)).standard_error;
    se_big += sampled_banzhaf(game, 2, plan_of(2000, seed)).standard_error;
  }
  CHECK(se_big <= 0.75 * se_small);
}

TEST_CASE("convergence sweep error falls with volume") {
  const auto game = fixtures::aligned_cosine_game(12, 16, 1.2, 777);
  std::vector<SweepTarget> targets;
  for (int p = 0; p < 12; ++p) targets.push_back(p);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);

  const auto rows = convergence_sweep(game, targets, {1000, 4500, 5500}, seeds);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].count == 1000);
  CHECK(rows[2].count == 5500);
  CHECK(rows[2].mean_rel_error <= rows[0].mean_rel_error);
  CHECK(rows[2].std_rel_error >= 0.0);
}

TEST_CASE("convergence sweep on the zero game reports zero error") {
  const auto game = fixtures::zero_game(6);
  const auto rows = convergence_sweep(game, {SweepTarget{0}, SweepTarget{std::pair{1, 2}}},
                                      {10, 50}, {1, 2, 3});
  for (const auto& row : rows) {
    CHECK(row.mean_rel_error == 0.0);
    CHECK(row.std_rel_error == 0.0);
  }
}

TEST_CASE("convergence sweep validates inputs") {
  const auto small = fixtures::zero_game(4);
  CHECK_THROWS_AS(convergence_sweep(small, {SweepTarget{0}}, {0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep(small, {}, {10}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep(small, {SweepTarget{0}}, {10}, {}), std::invalid_argument);
  const auto big = fixtures::zero_game(23);
  CHECK_THROWS_AS(convergence_sweep(big, {SweepTarget{0}}, {10}, {1}), CapExceeded);
}

TEST_CASE("shapley sweep works over pairs and players") {
  const auto game = fixtures::aligned_cosine_game(8, 8, 1.2, 31);
  const auto rows = convergence_sweep(game, {SweepTarget{1}, SweepTarget{std::pair{0, 3}}},
                                      {200, 800}, {1, 2, 3, 4, 5}, ValueKind::Shapley);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].mean_rel_error <= rows[0].mean_rel_error);
}
