#pragma once

// Analytic geometry of spin-1 states: the (u, W) coordinates, membership
// tests for the physical and classical sets, explicit boundary
// parametrizations, the quantumness witness, and independent verification
// oracles.

#include "spinone/boundary.hpp"
#include "spinone/classicality.hpp"
#include "spinone/io.hpp"
#include "spinone/nnls.hpp"
#include "spinone/oracles.hpp"
#include "spinone/rng.hpp"
#include "spinone/spin_operators.hpp"
#include "spinone/state.hpp"
#include "spinone/sym_eigen.hpp"
#include "spinone/types.hpp"
