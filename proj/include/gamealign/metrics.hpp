#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gamealign/errors.hpp"

namespace gamealign {

// One video-query pair ready for evaluation: ranked predicted intervals and
// the ground-truth interval, all in seconds.
struct EvalRecord {
  std::string id;
  std::vector<std::pair<double, double>> predictions;  // ranked (start_s, end_s)
  std::pair<double, double> ground_truth;
};

namespace detail {

inline void check_interval(const std::pair<double, double>& iv, const char* op) {
  if (iv.first > iv.second)
    throw InvertedInterval(std::string(op) + ": interval [" + std::to_string(iv.first) + ", " +
                           std::to_string(iv.second) + "] has start > end");
}

}  // namespace detail

// Intersection-over-union of two closed intervals on the time axis. Two
// zero-length intervals compare as 1 only when equal (0/0 guard).
inline double temporal_iou(const std::pair<double, double>& a,
                           const std::pair<double, double>& b) {
  detail::check_interval(a, "temporal_iou");
  detail::check_interval(b, "temporal_iou");
  const double inter = std::min(a.second, b.second) - std::max(a.first, b.first);
  const double uni = std::max(a.second, b.second) - std::min(a.first, b.first);
  if (uni <= 0.0) return a == b ? 1.0 : 0.0;
  return std::max(inter, 0.0) / uni;
}

// R@n,IoU=m: the fraction of records whose top n predictions contain at least
// one with IoU >= m against the ground truth.
inline double recall_at(const std::vector<EvalRecord>& records, int n, double m) {
  if (records.empty()) throw EmptyRecords("recall_at: no records");
  if (n < 1) throw std::invalid_argument("recall_at: n must be at least 1");
  if (!(m > 0.0) || m > 1.0)
    throw std::invalid_argument("recall_at: IoU threshold must be in (0, 1], got " +
                                std::to_string(m));

  int hits = 0;
  for (const EvalRecord& rec : records) {
    const int top = std::min<int>(n, static_cast<int>(rec.predictions.size()));
    for (int k = 0; k < top; ++k) {
      if (temporal_iou(rec.predictions[static_cast<std::size_t>(k)], rec.ground_truth) >= m) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

}  // namespace gamealign
