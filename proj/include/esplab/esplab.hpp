#pragma once

// Umbrella header for the esplab library: driven-system simulation,
// encoding-set approximation, Hausdorff set distances, parameter-stability
// profiles, and the experiment runner behind the CLI.

#include "esplab/config.hpp"
#include "esplab/csv.hpp"
#include "esplab/driven_system.hpp"
#include "esplab/ensemble.hpp"
#include "esplab/errors.hpp"
#include "esplab/experiment.hpp"
#include "esplab/fsio.hpp"
#include "esplab/hausdorff.hpp"
#include "esplab/input_segment.hpp"
#include "esplab/matrix.hpp"
#include "esplab/norms.hpp"
#include "esplab/parallel.hpp"
#include "esplab/propagate.hpp"
#include "esplab/rng.hpp"
#include "esplab/selfcheck.hpp"
#include "esplab/spectral.hpp"
#include "esplab/stability.hpp"
#include "esplab/svg.hpp"
#include "esplab/version.hpp"
