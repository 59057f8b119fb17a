#pragma once

#include "sld/analytic.hpp"
#include "sld/density_models.hpp"
#include "sld/error.hpp"
#include "sld/estimator.hpp"
#include "sld/estimator_io.hpp"
#include "sld/experiments.hpp"
#include "sld/feature_vector.hpp"
#include "sld/model_io.hpp"
#include "sld/random.hpp"
#include "sld/special_functions.hpp"
