#pragma once

#include "evotfs/density.hpp"
#include "evotfs/dft.hpp"
#include "evotfs/dtw.hpp"
#include "evotfs/errors.hpp"
#include "evotfs/evolve.hpp"
#include "evotfs/fitness.hpp"
#include "evotfs/genetic.hpp"
#include "evotfs/harness.hpp"
#include "evotfs/knn.hpp"
#include "evotfs/metrics.hpp"
#include "evotfs/parallel.hpp"
#include "evotfs/pipeline.hpp"
#include "evotfs/rng.hpp"
#include "evotfs/scheduler.hpp"
#include "evotfs/series.hpp"
#include "evotfs/smote.hpp"
#include "evotfs/terminals.hpp"
#include "evotfs/tree.hpp"
#include "evotfs/ucr.hpp"
