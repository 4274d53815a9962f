#pragma once

// Umbrella header: the whole library.

#include "hmn/core.hpp"
#include "hmn/generate.hpp"
#include "hmn/io.hpp"
#include "hmn/metrics.hpp"
#include "hmn/rng.hpp"
