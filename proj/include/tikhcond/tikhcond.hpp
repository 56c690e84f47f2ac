#pragma once
// Convenience umbrella: pulls in the whole library.

#include "tikhcond/core.hpp"
#include "tikhcond/rng.hpp"
#include "tikhcond/structured.hpp"
#include "tikhcond/gsvd.hpp"
#include "tikhcond/frechet.hpp"
#include "tikhcond/cond_exact.hpp"
#include "tikhcond/cond_power.hpp"
#include "tikhcond/cond_sce.hpp"
#include "tikhcond/problems.hpp"
#include "tikhcond/experiment.hpp"
#include "tikhcond/reproduce.hpp"
#include "tikhcond/json_io.hpp"
