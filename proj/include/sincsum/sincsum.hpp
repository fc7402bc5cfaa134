#pragma once

#include "sincsum/errors.hpp"
#include "sincsum/expansion.hpp"
#include "sincsum/functions.hpp"
#include "sincsum/gseries.hpp"
#include "sincsum/harness.hpp"
#include "sincsum/quadrature.hpp"
#include "sincsum/specfun.hpp"
