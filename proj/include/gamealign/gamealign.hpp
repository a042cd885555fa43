#pragma once

// Umbrella header: cooperative-game attribution over embedding sequences,
// cross-modal alignment scoring, and temporal moment localization.

#include "gamealign/alignment.hpp"
#include "gamealign/coalition.hpp"
#include "gamealign/embedding.hpp"
#include "gamealign/embedding_games.hpp"
#include "gamealign/errors.hpp"
#include "gamealign/game.hpp"
#include "gamealign/io.hpp"
#include "gamealign/localization.hpp"
#include "gamealign/metrics.hpp"
#include "gamealign/pipeline.hpp"
#include "gamealign/rng.hpp"
#include "gamealign/sampling.hpp"
#include "gamealign/synthetic.hpp"
#include "gamealign/values.hpp"
