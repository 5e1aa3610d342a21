#pragma once

#include "capmin/numeric.hpp"
#include "capmin/geometry.hpp"
#include "capmin/polynomial.hpp"
#include "capmin/linalg.hpp"
#include "capmin/measure.hpp"
#include "capmin/field.hpp"
#include "capmin/capacity.hpp"
#include "capmin/potential.hpp"
#include "capmin/algfun.hpp"
#include "capmin/pade.hpp"
#include "capmin/experiments.hpp"
#include "capmin/io.hpp"
