#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "gamealign/alignment.hpp"
#include "gamealign/embedding.hpp"
#include "gamealign/embedding_games.hpp"
#include "gamealign/localization.hpp"
#include "gamealign/sampling.hpp"
#include "gamealign/synthetic.hpp"
#include "gamealign/values.hpp"

namespace gamealign {

struct PipelineResult {
  MatchProfile profile;
  std::vector<Moment> moments;       // ranked, frame space
  std::vector<TimedMoment> timed;    // same moments in seconds
  InteractionGrid word_grid;         // with sentence_values filled in
  InteractionGrid phrase_grid;
};

namespace detail {

// Distinct stream ids for the pipeline stages, so one user seed fans out into
// independent sampling streams per stage.
enum PipelineStage : std::uint64_t {
  kStageEnhanceVisual = 101,
  kStageEnhanceWords = 102,
  kStageWordGrid = 103,
  kStagePhraseGrid = 104,
  kStageSentence = 105,
};

inline ComputeMode stage_mode(const ComputeMode& mode, std::uint64_t stage) {
  if (std::holds_alternative<Exact>(mode)) return mode;
  SamplingPlan plan = std::get<SamplingPlan>(mode);
  plan.seed = derive_seed(plan.seed, stage);
  return plan;
}

}  // namespace detail

// End-to-end grounding of one case: enhance the frame and word sequences,
// compute word/phrase/sentence interaction values (each phrase acts as a
// single textual player, like the sentence), combine them into per-frame
// matching degrees, score the video, and localize moments.
inline PipelineResult run_pipeline(const GroundingCase& grounding_case, const ComputeMode& mode,
                                   const LocalizerConfig& localizer,
                                   ValueKind kind = ValueKind::Banzhaf) {
  const int t = grounding_case.visual.size();

  const EnhancedSequence enhanced_visual =
      enhance(grounding_case.visual, detail::stage_mode(mode, detail::kStageEnhanceVisual));
  const EnhancedSequence enhanced_words =
      enhance(grounding_case.words, detail::stage_mode(mode, detail::kStageEnhanceWords));
  const EmbeddingSequence visual(enhanced_visual.vectors, Modality::Visual);
  const EmbeddingSequence words(enhanced_words.vectors, Modality::Textual);

  InteractionGrid word_grid = pairwise_interaction_grid(
      CrossModalGameSpec{visual, words}, detail::stage_mode(mode, detail::kStageWordGrid), kind);

  const int p = grounding_case.phrases.size();
  InteractionGrid phrase_grid;
  phrase_grid.frames = t;
  phrase_grid.words = p;
  phrase_grid.kind = kind;
  phrase_grid.values.assign(static_cast<std::size_t>(t) * p, 0.0);
  for (int l = 0; l < p; ++l) {
    ComputeMode phrase_mode = detail::stage_mode(mode, detail::kStagePhraseGrid);
    if (std::holds_alternative<SamplingPlan>(phrase_mode)) {
      auto plan = std::get<SamplingPlan>(phrase_mode);
      plan.seed = derive_seed(plan.seed, static_cast<std::uint64_t>(l) + 1);
      phrase_mode = plan;
    }
    const std::vector<double> column =
        sentence_level_interaction(visual, grounding_case.phrases.vector(l), phrase_mode, kind);
    for (int i = 0; i < t; ++i) phrase_grid.at(i, l) = column[static_cast<std::size_t>(i)];
  }

  word_grid.sentence_values = sentence_level_interaction(
      visual, grounding_case.sentence, detail::stage_mode(mode, detail::kStageSentence), kind);

  const std::vector<double> degrees =
      matching_degree(word_grid, phrase_grid, word_grid.sentence_values);

  PipelineResult result{
      video_score(degrees, word_grid.sentence_values),
      localize(degrees, localizer),
      {},
      std::move(word_grid),
      std::move(phrase_grid),
  };
  result.timed = predictions_to_seconds(result.moments, grounding_case.duration_s, t);
  return result;
}

}  // namespace gamealign
