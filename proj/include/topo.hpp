#pragma once

// Everything in one include.

#include "topo/errors.hpp"
#include "topo/numeric.hpp"
#include "topo/arith.hpp"
#include "topo/bqf.hpp"
#include "topo/topograph.hpp"
#include "topo/closed_forms.hpp"
#include "topo/special_functions.hpp"
#include "topo/series.hpp"
#include "topo/indefinite.hpp"
#include "topo/classnumber.hpp"
