#pragma once

// Core library: spinor algebra, field spinors, dynamics, closed-form oracle
// and rest-frame analysis.  The scenario and command layers live under
// spindyn/cli/ and additionally need nlohmann/json.

#include "spindyn/dynamics.hpp"
#include "spindyn/error.hpp"
#include "spindyn/field.hpp"
#include "spindyn/oracle.hpp"
#include "spindyn/rest_frame.hpp"
#include "spindyn/spinor.hpp"
#include "spindyn/state.hpp"
