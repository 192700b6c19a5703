#pragma once

#include "bephaz/csv.hpp"
#include "bephaz/data.hpp"
#include "bephaz/diagnostics.hpp"
#include "bephaz/errors.hpp"
#include "bephaz/evaluate.hpp"
#include "bephaz/gibbs.hpp"
#include "bephaz/grid.hpp"
#include "bephaz/matrix.hpp"
#include "bephaz/prior.hpp"
#include "bephaz/random.hpp"
#include "bephaz/simulate.hpp"
