#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gamealign/errors.hpp"

namespace gamealign {

enum class Modality { Visual, Textual };

inline const char* to_string(Modality m) { return m == Modality::Visual ? "visual" : "textual"; }

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

}  // namespace detail

// Squared norms this close to 1 mark a sequence as already unit-normalized.
// Renormalizing such vectors would only shuffle last bits, which breaks
// bitwise write/read/write stability of serialized sequences.
constexpr double kUnitNormSlack = 1e-9;

// An ordered list of embedding vectors (frames, words, or phrases). Vectors
// are normalized to unit norm on construction: every payoff downstream is a
// cosine, so directions are the whole signal, and normalizing up front makes
// per-vector rescaling an exact no-op instead of an approximate one. A
// sequence whose vectors are all unit-norm already is stored verbatim.
class EmbeddingSequence {
 public:
  EmbeddingSequence(std::vector<std::vector<double>> vectors, Modality modality)
      : vectors_(std::move(vectors)), modality_(modality) {
    if (vectors_.empty())
      throw std::invalid_argument("EmbeddingSequence: at least one vector required");
    dimension_ = static_cast<int>(vectors_[0].size());
    if (dimension_ == 0) throw std::invalid_argument("EmbeddingSequence: zero-dimensional vector");
    std::vector<double> inverse_norms(vectors_.size());
    bool already_unit = true;
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      const auto& v = vectors_[i];
      if (static_cast<int>(v.size()) != dimension_)
        throw ShapeMismatch("EmbeddingSequence: vector " + std::to_string(i) + " has dimension " +
                            std::to_string(v.size()) + ", expected " + std::to_string(dimension_));
      double sq = 0.0;
      for (double x : v) {
        if (!std::isfinite(x))
          throw NonFinite("EmbeddingSequence: non-finite component in vector " + std::to_string(i));
        sq += x * x;
      }
      if (sq == 0.0)
        throw ZeroVector("EmbeddingSequence: vector " + std::to_string(i) + " has zero norm");
      if (std::abs(sq - 1.0) > kUnitNormSlack) already_unit = false;
      inverse_norms[i] = 1.0 / std::sqrt(sq);
    }
    if (!already_unit)
      for (std::size_t i = 0; i < vectors_.size(); ++i)
        for (double& x : vectors_[i]) x *= inverse_norms[i];
  }

  int size() const { return static_cast<int>(vectors_.size()); }
  int dimension() const { return dimension_; }
  Modality modality() const { return modality_; }
  const std::vector<double>& vector(int i) const { return vectors_[static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }

 private:
  std::vector<std::vector<double>> vectors_;
  Modality modality_;
  int dimension_ = 0;
};

namespace detail {

// Cosine similarity of two (not necessarily unit) vectors.
inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw ZeroVector("cosine: zero-norm operand");
  return dot(a, b) / (na * nb);
}

}  // namespace detail

}  // namespace gamealign
