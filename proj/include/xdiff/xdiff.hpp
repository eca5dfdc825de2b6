#pragma once

#include "xdiff/errors.hpp"
#include "xdiff/filter_engine.hpp"
#include "xdiff/grid_transform.hpp"
#include "xdiff/quality_metrics.hpp"
#include "xdiff/signal_io.hpp"
#include "xdiff/spectral_core.hpp"
