#pragma once

#include "pprei/embedding.hpp"
#include "pprei/error.hpp"
#include "pprei/graph.hpp"
#include "pprei/invert_analytical.hpp"
#include "pprei/invert_optimize.hpp"
#include "pprei/linalg.hpp"
#include "pprei/matrix_io.hpp"
#include "pprei/metrics.hpp"
#include "pprei/parallel.hpp"
#include "pprei/proximity.hpp"
