#pragma once

#include "swarmsearch/bfoa.hpp"
#include "swarmsearch/config.hpp"
#include "swarmsearch/experiment.hpp"
#include "swarmsearch/field.hpp"
#include "swarmsearch/io.hpp"
#include "swarmsearch/landscape.hpp"
#include "swarmsearch/lattice.hpp"
#include "swarmsearch/metrics.hpp"
#include "swarmsearch/rng.hpp"
#include "swarmsearch/ssa.hpp"
