#pragma once

// Umbrella header: best max-norm approximation of time series by
// f(t) = a e^{k t} + b, plus the line fit, rate search, certificates,
// and the CSV/JSON plumbing used by the CLI.

#include "chebex/csv.hpp"
#include "chebex/errors.hpp"
#include "chebex/fit_result.hpp"
#include "chebex/fixed_k.hpp"
#include "chebex/k_search.hpp"
#include "chebex/linear_fit.hpp"
#include "chebex/model.hpp"
#include "chebex/oracle.hpp"
#include "chebex/report.hpp"
#include "chebex/shape.hpp"
#include "chebex/symmetry.hpp"
#include "chebex/time_series.hpp"
#include "chebex/tolerance.hpp"
