#pragma once

// Umbrella header.

#include "asdist/arith.hpp"
#include "asdist/counting.hpp"
#include "asdist/dirichlet.hpp"
#include "asdist/divisor_module.hpp"
#include "asdist/errors.hpp"
#include "asdist/field_model.hpp"
#include "asdist/oracle/artin_schreier.hpp"
#include "asdist/oracle/gf.hpp"
#include "asdist/rational_function.hpp"
#include "asdist/real.hpp"
#include "asdist/series.hpp"
#include "asdist/tauberian.hpp"
