#pragma once

#include "hashnet/analysis.hpp"
#include "hashnet/community.hpp"
#include "hashnet/config.hpp"
#include "hashnet/corpus.hpp"
#include "hashnet/error.hpp"
#include "hashnet/export.hpp"
#include "hashnet/graph.hpp"
#include "hashnet/hashtag.hpp"
#include "hashnet/layering.hpp"
#include "hashnet/matching.hpp"
#include "hashnet/pipeline.hpp"
#include "hashnet/projection.hpp"
#include "hashnet/report.hpp"
#include "hashnet/synth.hpp"
