#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gamealign/embedding.hpp"
#include "gamealign/embedding_games.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/game.hpp"
#include "gamealign/rng.hpp"
#include "gamealign/sampling.hpp"

namespace gamealign {

// Dense row-major matrix, just large enough for score grids and batch score
// matrices; not a linear-algebra type.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  static Matrix zeros(int rows, int cols) {
    Matrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
    return m;
  }

  double at(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
  double& at(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
};

struct Distribution {
  std::vector<double> probs;
};

struct EnhancedSequence {
  std::vector<std::vector<double>> vectors;
  EmbeddingSequence source;
  int subset_budget = 0;  // number of coalitions the softmax ranged over
};

struct MatchProfile {
  std::vector<double> per_frame;  // m_i
  Distribution weights;           // softmax over sentence-level values
  double video_score = 0.0;       // dot(per_frame, weights)
};

namespace detail {

inline void check_finite(const std::vector<double>& xs, const char* op) {
  for (double x : xs)
    if (!std::isfinite(x)) throw NonFinite(std::string(op) + ": non-finite input");
}

inline std::vector<double> softmax(const std::vector<double>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  std::vector<double> out(xs.size());
  double z = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = std::exp(xs[i] - m);
    z += out[i];
  }
  for (double& x : out) x /= z;
  return out;
}

inline std::vector<double> log_softmax(const std::vector<double>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double z = 0.0;
  for (double x : xs) z += std::exp(x - m);
  const double log_z = std::log(z);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i] - m - log_z;
  return out;
}

inline void check_distribution(const Distribution& d, const char* op) {
  if (d.probs.empty()) throw std::invalid_argument(std::string(op) + ": empty distribution");
  double sum = 0.0;
  for (double p : d.probs) {
    if (!(p > 0.0)) throw std::invalid_argument(std::string(op) + ": non-positive probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(op) + ": probabilities sum to " + std::to_string(sum));
}

}  // namespace detail

// Softmax over a list of per-element scalars (game values), giving the
// game-guided probability distribution the KLD losses are measured against.
inline Distribution game_distribution(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("game_distribution: empty input");
  detail::check_finite(values, "game_distribution");
  return Distribution{detail::softmax(values)};
}

// (1/k) * KL(target || predicted). The 1/k factor mirrors the averaged form
// the losses are written in; the result is clamped at zero so equal inputs
// return exactly 0 despite rounding.
inline double kld_loss(const Distribution& predicted, const Distribution& target) {
  if (predicted.probs.size() != target.probs.size())
    throw LengthMismatch("kld_loss: predicted length " + std::to_string(predicted.probs.size()) +
                         " != target length " + std::to_string(target.probs.size()));
  detail::check_distribution(predicted, "kld_loss");
  detail::check_distribution(target, "kld_loss");
  double sum = 0.0;
  for (std::size_t i = 0; i < target.probs.size(); ++i)
    sum += target.probs[i] * (std::log(target.probs[i]) - std::log(predicted.probs[i]));
  return std::max(sum / static_cast<double>(target.probs.size()), 0.0);
}

// Word-level alignment loss: every word's column (over frames) in both grids
// is softmaxed, and the per-column KLDs (target = interaction grid) are
// averaged over words. Constant column shifts in either grid cancel.
inline double word_alignment_loss(const Matrix& predicted_grid,
                                  const InteractionGrid& interaction_grid) {
  if (predicted_grid.rows != interaction_grid.frames ||
      predicted_grid.cols != interaction_grid.words)
    throw ShapeMismatch("word_alignment_loss: predicted grid is " +
                        std::to_string(predicted_grid.rows) + "x" +
                        std::to_string(predicted_grid.cols) + ", interaction grid is " +
                        std::to_string(interaction_grid.frames) + "x" +
                        std::to_string(interaction_grid.words));
  const int t = interaction_grid.frames;
  const int m = interaction_grid.words;
  double sum = 0.0;
  std::vector<double> pred_col(static_cast<std::size_t>(t));
  std::vector<double> target_col(static_cast<std::size_t>(t));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < t; ++i) {
      pred_col[static_cast<std::size_t>(i)] = predicted_grid.at(i, j);
      target_col[static_cast<std::size_t>(i)] = interaction_grid.at(i, j);
    }
    detail::check_finite(pred_col, "word_alignment_loss");
    detail::check_finite(target_col, "word_alignment_loss");
    sum += kld_loss(Distribution{detail::softmax(pred_col)},
                    Distribution{detail::softmax(target_col)});
  }
  return sum / static_cast<double>(m);
}

// Exact-mode enhancement enumerates every coalition; past this length the
// 2^(T-1) subset collection is unreasonable and sampling mode applies.
constexpr int kEnhanceExactCap = 16;

// Self-modal feature enhancement: for element i, each coalition S of the other
// elements contributes the mean-pooled feature of S u {i}, weighted by a
// softmax over the marginal contributions g(S u {i}) - g(S) of the collection.
// The weighted sum is added to the element's own vector.
inline EnhancedSequence enhance(const EmbeddingSequence& seq, const ComputeMode& mode) {
  const int n = seq.size();
  const int dim = seq.dimension();
  const CharacteristicGame game = self_modal_game(seq);

  const bool exact = std::holds_alternative<Exact>(mode);
  if (exact && n > kEnhanceExactCap)
    throw CapExceeded("enhance: " + std::to_string(n) + " elements exceeds the exact cap of " +
                      std::to_string(kEnhanceExactCap));
  if (!exact) detail::check_plan(std::get<SamplingPlan>(mode), "enhance");

  EnhancedSequence out{std::vector<std::vector<double>>(), seq, 0};
  out.vectors.reserve(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = 1ULL << i;
    const std::uint64_t others = Coalition::full(n).bits() & ~bit;

    std::vector<std::uint64_t> coalitions;  // each already includes element i
    if (exact) {
      coalitions.reserve(std::size_t{1} << (n - 1));
      detail::for_each_submask(others, [&](std::uint64_t s) { coalitions.push_back(s | bit); });
    } else {
      const SamplingPlan& plan = std::get<SamplingPlan>(mode);
      Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(i) + 1));
      coalitions.reserve(static_cast<std::size_t>(plan.sample_count));
      for (int k = 0; k < plan.sample_count; ++k)
        coalitions.push_back(rng.subset_bits(others) | bit);
    }

    std::vector<double> marginals;
    marginals.reserve(coalitions.size());
    for (std::uint64_t c : coalitions)
      marginals.push_back(game.evaluate(Coalition(c, n)) -
                          game.evaluate(Coalition(c & ~bit, n)));
    const std::vector<double> weights = detail::softmax(marginals);

    std::vector<double> v = seq.vector(i);
    for (std::size_t k = 0; k < coalitions.size(); ++k) {
      const Coalition c(coalitions[k], n);
      const std::vector<int> members = c.members();
      const double scale = weights[k] / static_cast<double>(members.size());
      for (int p : members) {
        const auto& f = seq.vector(p);
        for (int d = 0; d < dim; ++d) v[static_cast<std::size_t>(d)] += scale * f[static_cast<std::size_t>(d)];
      }
    }
    out.vectors.push_back(std::move(v));
    out.subset_budget = static_cast<int>(coalitions.size());
  }
  return out;
}

// Per-frame matching degree: the average of the frame's sentence-level value,
// its mean word-level interaction, and its mean phrase-level interaction.
inline std::vector<double> matching_degree(const InteractionGrid& word_grid,
                                           const InteractionGrid& phrase_grid,
                                           const std::vector<double>& sentence) {
  const int t = word_grid.frames;
  if (phrase_grid.frames != t || static_cast<int>(sentence.size()) != t)
    throw ShapeMismatch("matching_degree: inconsistent frame counts (word grid " +
                        std::to_string(t) + ", phrase grid " +
                        std::to_string(phrase_grid.frames) + ", sentence " +
                        std::to_string(sentence.size()) + ")");
  if (word_grid.words < 1 || phrase_grid.words < 1)
    throw ShapeMismatch("matching_degree: grids must have at least one column");

  std::vector<double> m(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    double word_mean = 0.0;
    for (int j = 0; j < word_grid.words; ++j) word_mean += word_grid.at(i, j);
    word_mean /= word_grid.words;
    double phrase_mean = 0.0;
    for (int l = 0; l < phrase_grid.words; ++l) phrase_mean += phrase_grid.at(i, l);
    phrase_mean /= phrase_grid.words;
    m[static_cast<std::size_t>(i)] =
        (sentence[static_cast<std::size_t>(i)] + word_mean + phrase_mean) / 3.0;
  }
  return m;
}

// Whole-video score: matching degrees averaged under softmax weights of the
// per-frame sentence-level values.
inline MatchProfile video_score(const std::vector<double>& m, const std::vector<double>& sentence) {
  if (m.size() != sentence.size())
    throw LengthMismatch("video_score: " + std::to_string(m.size()) + " matching degrees vs " +
                         std::to_string(sentence.size()) + " sentence values");
  if (m.empty()) throw std::invalid_argument("video_score: empty input");
  detail::check_finite(m, "video_score");
  detail::check_finite(sentence, "video_score");

  MatchProfile profile;
  profile.per_frame = m;
  profile.weights = Distribution{detail::softmax(sentence)};
  profile.video_score = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    profile.video_score += profile.weights.probs[i] * m[i];
  return profile;
}

// Symmetric InfoNCE over a batch score matrix whose diagonal holds the
// matched video-sentence pairs: cross-entropy of each row's softmax at the
// diagonal plus the same over columns, averaged over the batch.
inline double contrastive_loss(const Matrix& scores, double temperature = 0.1) {
  if (scores.rows != scores.cols)
    throw NonSquare("contrastive_loss: score matrix is " + std::to_string(scores.rows) + "x" +
                    std::to_string(scores.cols));
  if (scores.rows < 1) throw std::invalid_argument("contrastive_loss: empty score matrix");
  if (!(temperature > 0.0))
    throw NonPositiveTemperature("contrastive_loss: temperature must be positive, got " +
                                 std::to_string(temperature));
  detail::check_finite(scores.data, "contrastive_loss");

  const int n = scores.rows;
  std::vector<double> row(static_cast<std::size_t>(n));
  std::vector<double> col(static_cast<std::size_t>(n));
  double loss = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = scores.at(k, j) / temperature;
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = scores.at(i, k) / temperature;
    loss -= detail::log_softmax(row)[static_cast<std::size_t>(k)];
    loss -= detail::log_softmax(col)[static_cast<std::size_t>(k)];
  }
  return loss / static_cast<double>(n);
}

constexpr std::array<double, 4> kDefaultAlphas = {1.0, 1.0, 1.0, 10.0};

// Weighted sum of the four loss components. The reconstruction slot exists so
// the total has the full shape even though no reconstruction is computed here;
// callers pass 0 for it.
inline double aggregate_loss(double l_self, double l_align, double l_c, double l_rec = 0.0,
                             const std::array<double, 4>& alphas = kDefaultAlphas) {
  const std::array<double, 4> parts = {l_self, l_align, l_c, l_rec};
  for (double x : parts)
    if (!std::isfinite(x)) throw NonFinite("aggregate_loss: non-finite loss component");
  for (double a : alphas)
    if (!std::isfinite(a)) throw NonFinite("aggregate_loss: non-finite weight");
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) total += alphas[i] * parts[i];
  return total;
}

}  // namespace gamealign
