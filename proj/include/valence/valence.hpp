/// @file valence.hpp
/// @brief Umbrella header for the sentiment word-list toolkit.

#pragma once

#include "valence/corpus.hpp"
#include "valence/experiments.hpp"
#include "valence/lexicompare.hpp"
#include "valence/lexicon.hpp"
#include "valence/matcher.hpp"
#include "valence/porter.hpp"
#include "valence/report.hpp"
#include "valence/scorer.hpp"
#include "valence/stats.hpp"
#include "valence/text.hpp"
#include "valence/tokenizer.hpp"
