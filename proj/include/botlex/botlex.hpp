#pragma once

// Umbrella header: tweet lexing, lexical/profile features, screening
// heuristics, classifiers, evaluation and corpus I/O.

#include "botlex/account.hpp"
#include "botlex/annotator.hpp"
#include "botlex/classifiers.hpp"
#include "botlex/dataset_io.hpp"
#include "botlex/evaluation.hpp"
#include "botlex/feature_matrix.hpp"
#include "botlex/lexical_features.hpp"
#include "botlex/lexicons.hpp"
#include "botlex/pipeline.hpp"
#include "botlex/profile_features.hpp"
#include "botlex/synth.hpp"
#include "botlex/timestamp.hpp"
#include "botlex/token.hpp"
#include "botlex/tokenizer.hpp"
#include "botlex/version.hpp"
