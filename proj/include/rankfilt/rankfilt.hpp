#pragma once

#include "rankfilt/error.hpp"
#include "rankfilt/filters.hpp"
#include "rankfilt/image.hpp"
#include "rankfilt/metrics.hpp"
#include "rankfilt/noise.hpp"
#include "rankfilt/pgm.hpp"
#include "rankfilt/rng.hpp"
#include "rankfilt/sliding.hpp"
#include "rankfilt/sweep.hpp"
