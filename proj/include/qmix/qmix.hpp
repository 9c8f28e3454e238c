#pragma once

// Finite-dimensional quantum statistical mixtures: density operators,
// higher-order moments of expectation-value random variables, bipartite
// reductions and a seeded Monte-Carlo measurement layer.

#include "qmix/algebra.hpp"
#include "qmix/bipartite.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/errors.hpp"
#include "qmix/matrix.hpp"
#include "qmix/mixtures.hpp"
#include "qmix/moments.hpp"
#include "qmix/sampling.hpp"
#include "qmix/tolerances.hpp"
#include "qmix/version.hpp"
