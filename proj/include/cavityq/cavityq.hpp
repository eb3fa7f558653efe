#pragma once

// Umbrella header: the closed-form engine, the brute-force oracles that
// cross-check it, and the verification battery tying the two together.

#include "cavityq/coherent.hpp"
#include "cavityq/errors.hpp"
#include "cavityq/format.hpp"
#include "cavityq/gaussian_q.hpp"
#include "cavityq/oracle/composite.hpp"
#include "cavityq/oracle/fock.hpp"
#include "cavityq/oracle/gaussian_integral.hpp"
#include "cavityq/oracle/moment_ode.hpp"
#include "cavityq/oracle/moment_table.hpp"
#include "cavityq/params.hpp"
#include "cavityq/quadrature.hpp"
#include "cavityq/statistics.hpp"
#include "cavityq/subharmonic.hpp"
#include "cavityq/superposition.hpp"
#include "cavityq/sweep.hpp"
#include "cavityq/verify.hpp"
