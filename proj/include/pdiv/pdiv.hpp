#pragma once

// Umbrella header for the pdiv library: persistence diagrams, classical
// Wasserstein/bottleneck distances, asymmetric (f,p) divergences, finite
// projection and vectorizations, and a small persistent-homology front end.

#include "pdiv/assignment.hpp"
#include "pdiv/diagram.hpp"
#include "pdiv/divergence.hpp"
#include "pdiv/extended_value.hpp"
#include "pdiv/filtration.hpp"
#include "pdiv/persistence.hpp"
#include "pdiv/tame_function.hpp"
#include "pdiv/text.hpp"
#include "pdiv/vectorize.hpp"
