#pragma once

#include "assembly.hpp"
#include "config.hpp"
#include "dense_eigen.hpp"
#include "golden_section.hpp"
#include "lfa.hpp"
#include "operator_matrix.hpp"
#include "optimal_params.hpp"
#include "rd_coefficients.hpp"
#include "thresholds.hpp"
#include "two_level.hpp"
#include "experiments.hpp"
