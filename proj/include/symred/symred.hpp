#pragma once

// Umbrella header: exact certification of derived symplectic reductions of
// polynomial Hamiltonian spaces.

#include "symred/chain.hpp"
#include "symred/cli.hpp"
#include "symred/derham.hpp"
#include "symred/expr.hpp"
#include "symred/groebner.hpp"
#include "symred/hamspace.hpp"
#include "symred/koszul.hpp"
#include "symred/matrix.hpp"
#include "symred/orbit.hpp"
#include "symred/pipeline.hpp"
#include "symred/poly.hpp"
#include "symred/rational.hpp"
#include "symred/reduction.hpp"
#include "symred/report.hpp"
#include "symred/ring.hpp"
#include "symred/scenario.hpp"
#include "symred/toml.hpp"
