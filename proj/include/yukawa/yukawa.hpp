#pragma once

#include "yukawa/special_functions.hpp"
#include "yukawa/quadrature.hpp"
#include "yukawa/hydrogenic.hpp"
#include "yukawa/perturbation.hpp"
#include "yukawa/numerov.hpp"
#include "yukawa/report.hpp"
