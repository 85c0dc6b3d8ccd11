#pragma once

// Umbrella header: group arithmetic, group-ring convolution operators,
// truncated l2 formal inverses, the Bernoulli-factor measures mu_{m,xi},
// homoclinic points, and the exact finite-group oracle.

#include "algact/ball.hpp"
#include "algact/dirichlet.hpp"
#include "algact/expr.hpp"
#include "algact/finsupp.hpp"
#include "algact/group.hpp"
#include "algact/group_ring.hpp"
#include "algact/homoclinic.hpp"
#include "algact/l2.hpp"
#include "algact/measures.hpp"
#include "algact/membership.hpp"
#include "algact/oracle.hpp"
#include "algact/presets.hpp"
#include "algact/rational.hpp"
#include "algact/sampling.hpp"
#include "algact/solver.hpp"
#include "algact/torus.hpp"
#include "algact/torus_fft.hpp"
