#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gamealign/errors.hpp"

namespace gamealign {

// A temporal moment in frame space: inclusive frame interval plus the mean
// matching degree of its frames (the ranking score).
struct Moment {
  int start = 0;
  int end = 0;
  double score = 0.0;
};

struct LocalizerConfig {
  double threshold = 0.8;  // neighbor/boundary score ratio needed to join
  int max_moments = 5;

  void validate() const {
    if (!(threshold > 0.0) || threshold > 1.0)
      throw ConfigInvalid("LocalizerConfig: threshold must be in (0, 1], got " +
                          std::to_string(threshold));
    if (max_moments < 1)
      throw ConfigInvalid("LocalizerConfig: max_moments must be positive, got " +
                          std::to_string(max_moments));
  }
};

struct TimedMoment {
  double start_s = 0.0;
  double end_s = 0.0;
  double score = 0.0;
};

// Threshold-controlled boundary expansion. Each moment grows from the highest
// uncovered frame: a neighbor joins while its score divided by the score of
// the nearest frame already inside the moment stays at or above the threshold.
// Ratio semantics need positive scores, so when any score is <= 0 the whole
// vector is shifted by -min + 1e-6 first (argmax and score order survive the
// shift; reported moment scores use the original values).
inline std::vector<Moment> localize(const std::vector<double>& scores,
                                    const LocalizerConfig& config) {
  if (scores.empty()) throw EmptyScores("localize: no scores");
  config.validate();
  for (double s : scores)
    if (!std::isfinite(s)) throw NonFinite("localize: non-finite score");

  const int t = static_cast<int>(scores.size());
  std::vector<double> shifted = scores;
  const double lo = *std::min_element(scores.begin(), scores.end());
  if (lo <= 0.0)
    for (double& s : shifted) s += -lo + 1e-6;

  std::vector<bool> covered(static_cast<std::size_t>(t), false);
  std::vector<Moment> moments;
  while (static_cast<int>(moments.size()) < config.max_moments) {
    int seed = -1;
    for (int i = 0; i < t; ++i)
      if (!covered[static_cast<std::size_t>(i)] &&
          (seed < 0 || shifted[static_cast<std::size_t>(i)] > shifted[static_cast<std::size_t>(seed)]))
        seed = i;
    if (seed < 0) break;

    int start = seed;
    int end = seed;
    bool grew = true;
    while (grew) {
      grew = false;
      const int left = start - 1;
      if (left >= 0 && !covered[static_cast<std::size_t>(left)] &&
          shifted[static_cast<std::size_t>(left)] / shifted[static_cast<std::size_t>(start)] >=
              config.threshold) {
        start = left;
        grew = true;
      }
      const int right = end + 1;
      if (right < t && !covered[static_cast<std::size_t>(right)] &&
          shifted[static_cast<std::size_t>(right)] / shifted[static_cast<std::size_t>(end)] >=
              config.threshold) {
        end = right;
        grew = true;
      }
    }

    Moment m;
    m.start = start;
    m.end = end;
    double sum = 0.0;
    for (int i = start; i <= end; ++i) {
      covered[static_cast<std::size_t>(i)] = true;
      sum += scores[static_cast<std::size_t>(i)];
    }
    m.score = sum / static_cast<double>(end - start + 1);
    moments.push_back(m);
  }

  std::stable_sort(moments.begin(), moments.end(),
                   [](const Moment& a, const Moment& b) { return a.score > b.score; });
  return moments;
}

// Frame-index moments to second offsets: frame k spans
// [k, k+1) * duration / T seconds.
inline std::vector<TimedMoment> predictions_to_seconds(const std::vector<Moment>& moments,
                                                       double duration_seconds, int t) {
  if (!(duration_seconds > 0.0))
    throw NonPositiveDuration("predictions_to_seconds: duration must be positive, got " +
                              std::to_string(duration_seconds));
  if (t < 1) throw std::invalid_argument("predictions_to_seconds: frame count must be positive");

  std::vector<TimedMoment> out;
  out.reserve(moments.size());
  for (const Moment& m : moments) {
    TimedMoment tm;
    tm.start_s = m.start * duration_seconds / t;
    tm.end_s = (m.end + 1) * duration_seconds / t;
    tm.score = m.score;
    out.push_back(tm);
  }
  return out;
}

}  // namespace gamealign
