#pragma once

#include "qamar/analysis.hpp"
#include "qamar/analyzer.hpp"
#include "qamar/error.hpp"
#include "qamar/evalkit.hpp"
#include "qamar/lemmagen.hpp"
#include "qamar/lexicon.hpp"
#include "qamar/morpho.hpp"
#include "qamar/render.hpp"
#include "qamar/tagger.hpp"
#include "qamar/text.hpp"
#include "qamar/utf8.hpp"
