#pragma once

#include "defourier/auto_integrator.hpp"
#include "defourier/de_maps.hpp"
#include "defourier/error_model.hpp"
#include "defourier/errors.hpp"
#include "defourier/quadrature.hpp"
#include "defourier/specfun.hpp"
#include "defourier/testbed.hpp"
