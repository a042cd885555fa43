#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamealign/embedding.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/localization.hpp"
#include "gamealign/rng.hpp"

namespace gamealign {

// Configuration for the planted-moment generator. When `moment` is unset each
// case plants its own random compact interval (width at most half the video,
// rounded up), so multi-pair datasets exercise varied ground truths while the
// planted moment stays a localizable fraction of the video.
struct SyntheticConfig {
  int frames = 6;     // T
  int words = 3;      // M
  int phrases = 1;    // P
  int dimension = 64; // D
  std::optional<std::pair<int, int>> moment;  // planted [start, end], inclusive
  double noise_sigma = 0.05;
  std::uint64_t seed = 0;
  int pairs = 1;
  double duration_s = 30.0;

  void validate() const {
    if (frames < 1) throw ConfigInvalid("SyntheticConfig: frames must be positive");
    if (words < 1) throw ConfigInvalid("SyntheticConfig: words must be positive");
    if (phrases < 1) throw ConfigInvalid("SyntheticConfig: phrases must be positive");
    if (dimension < 2) throw ConfigInvalid("SyntheticConfig: dimension must be at least 2");
    if (!(noise_sigma >= 0.0)) throw ConfigInvalid("SyntheticConfig: noise_sigma must be >= 0");
    if (pairs < 1) throw ConfigInvalid("SyntheticConfig: pairs must be positive");
    if (!(duration_s > 0.0)) throw ConfigInvalid("SyntheticConfig: duration_s must be positive");
    if (moment) {
      const auto [s, e] = *moment;
      if (s < 0 || s > e || e >= frames)
        throw ConfigInvalid("SyntheticConfig: moment [" + std::to_string(s) + ", " +
                            std::to_string(e) + "] invalid for " + std::to_string(frames) +
                            " frames");
    }
  }
};

// One synthetic video-query pair with a known ground-truth moment.
struct GroundingCase {
  std::string id;
  EmbeddingSequence visual;
  EmbeddingSequence words;
  EmbeddingSequence phrases;
  std::vector<double> sentence;
  Moment truth;
  double duration_s = 30.0;
};

// Separation bound used throughout the generator: textual vectors are drawn
// mutually quasi-orthogonal (pairwise |cosine| below this bound) and
// outside-moment frames must stay dissimilar to every textual vector, so the
// planted signal is the only cross-modal structure and truth labels remain
// meaningful. Re-draws exceeding the cap indicate an infeasible configuration
// (e.g. many words in a tiny dimension).
constexpr double kOutsideCosineBound = 0.2;
constexpr int kMaxRejectionDraws = 100000;

namespace detail {

inline void check_draw_budget(int draws, const char* what, int dim) {
  if (draws > kMaxRejectionDraws)
    throw ConfigInvalid(std::string("generate: cannot sample ") + what +
                        "; the configuration is too crowded for dimension " + std::to_string(dim));
}

}  // namespace detail

// Generates `pairs` cases. Each case draws from its own stream derived from
// (seed, case index), so cases are independent and any prefix of a dataset is
// bitwise-stable under a larger `pairs` value. All frames inside the planted
// moment depict one randomly chosen word (plus per-frame noise), mirroring a
// moment that shows a single concept of the query.
inline std::vector<GroundingCase> generate(const SyntheticConfig& config) {
  config.validate();
  const int t = config.frames;
  const int dim = config.dimension;

  std::vector<GroundingCase> cases;
  cases.reserve(static_cast<std::size_t>(config.pairs));
  for (int k = 0; k < config.pairs; ++k) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(k) + 1));

    int start = 0;
    int end = 0;
    if (config.moment) {
      start = config.moment->first;
      end = config.moment->second;
    } else {
      const int max_width = (t + 1) / 2;
      const int width = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_width)));
      start = static_cast<int>(rng.below(static_cast<std::uint64_t>(t - width + 1)));
      end = start + width - 1;
    }

    std::vector<std::vector<double>> words;
    words.reserve(static_cast<std::size_t>(config.words));
    for (int j = 0; j < config.words; ++j) {
      int draws = 0;
      while (true) {
        detail::check_draw_budget(++draws, "mutually dissimilar words", dim);
        std::vector<double> w = rng.unit_vector(dim);
        bool ok = true;
        for (const auto& prev : words)
          if (std::abs(detail::dot(w, prev)) >= kOutsideCosineBound) {
            ok = false;
            break;
          }
        if (ok) {
          words.push_back(std::move(w));
          break;
        }
      }
    }

    std::vector<std::vector<double>> phrases;
    phrases.reserve(static_cast<std::size_t>(config.phrases));
    for (int l = 0; l < config.phrases; ++l) {
      int draws = 0;
      while (true) {
        detail::check_draw_budget(++draws, "phrases dissimilar to the words", dim);
        std::vector<double> p = rng.unit_vector(dim);
        bool ok = true;
        for (const auto& w : words)
          if (std::abs(detail::dot(p, w)) >= kOutsideCosineBound) {
            ok = false;
            break;
          }
        for (const auto& prev : phrases)
          if (ok && std::abs(detail::dot(p, prev)) >= kOutsideCosineBound) {
            ok = false;
            break;
          }
        if (ok) {
          phrases.push_back(std::move(p));
          break;
        }
      }
    }

    std::vector<double> sentence(static_cast<std::size_t>(dim), 0.0);
    for (const auto& w : words)
      for (int d = 0; d < dim; ++d) sentence[static_cast<std::size_t>(d)] += w[static_cast<std::size_t>(d)];
    const double sn = detail::norm(sentence);
    if (sn == 0.0) throw ConfigInvalid("generate: word vectors cancelled; retry another seed");
    for (double& x : sentence) x /= sn;

    std::vector<const std::vector<double>*> textual;
    textual.reserve(words.size() + phrases.size() + 1);
    for (const auto& w : words) textual.push_back(&w);
    for (const auto& p : phrases) textual.push_back(&p);
    textual.push_back(&sentence);

    const auto& planted = words[rng.below(static_cast<std::uint64_t>(config.words))];

    std::vector<std::vector<double>> frames;
    frames.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
      if (i >= start && i <= end) {
        std::vector<double> f(planted);
        for (double& x : f) x += config.noise_sigma * rng.normal();
        frames.push_back(std::move(f));  // EmbeddingSequence normalizes
      } else {
        int draws = 0;
        while (true) {
          detail::check_draw_budget(++draws, "a frame dissimilar to the query vectors", dim);
          std::vector<double> f = rng.unit_vector(dim);
          bool ok = true;
          for (const auto* w : textual)
            if (detail::dot(f, *w) >= kOutsideCosineBound) {
              ok = false;
              break;
            }
          if (ok) {
            frames.push_back(std::move(f));
            break;
          }
        }
      }
    }

    cases.push_back(GroundingCase{
        "case-" + std::to_string(k),
        EmbeddingSequence(std::move(frames), Modality::Visual),
        EmbeddingSequence(std::move(words), Modality::Textual),
        EmbeddingSequence(std::move(phrases), Modality::Textual),
        std::move(sentence),
        Moment{start, end, 0.0},
        config.duration_s,
    });
  }
  return cases;
}

}  // namespace gamealign
