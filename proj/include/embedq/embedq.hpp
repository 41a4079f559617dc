#pragma once

// Umbrella header.

#include "embedq/baselines.hpp"
#include "embedq/clustering.hpp"
#include "embedq/cmet.hpp"
#include "embedq/core.hpp"
#include "embedq/datagen.hpp"
#include "embedq/embedders.hpp"
#include "embedq/error.hpp"
#include "embedq/io.hpp"
#include "embedq/matrix.hpp"
#include "embedq/plot.hpp"
#include "embedq/random.hpp"
#include "embedq/report.hpp"
