#pragma once

#include "hsteklov/error.hpp"
#include "hsteklov/hypgeo.hpp"
#include "hsteklov/point_index.hpp"
#include "hsteklov/rough_isometry.hpp"
#include "hsteklov/tiling.hpp"
#include "hsteklov/graph.hpp"
#include "hsteklov/steklov.hpp"
#include "hsteklov/spatial.hpp"
#include "hsteklov/domain.hpp"
#include "hsteklov/discretize.hpp"
#include "hsteklov/io.hpp"
#include "hsteklov/experiments.hpp"
