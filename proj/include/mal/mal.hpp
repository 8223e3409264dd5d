#pragma once

// Umbrella header: the full moment-angle cohomology toolkit.

#include "mal/bigraded.hpp"
#include "mal/cache.hpp"
#include "mal/classify.hpp"
#include "mal/graph.hpp"
#include "mal/homology.hpp"
#include "mal/io.hpp"
#include "mal/linalg.hpp"
#include "mal/report.hpp"
#include "mal/simplicial_complex.hpp"
#include "mal/version.hpp"
#include "mal/vertex_set.hpp"
