#pragma once

#include "orbcount/bigint.hpp"
#include "orbcount/enumerate.hpp"
#include "orbcount/errors.hpp"
#include "orbcount/fetch.hpp"
#include "orbcount/fp_poly.hpp"
#include "orbcount/invariants.hpp"
#include "orbcount/lattice_census.hpp"
#include "orbcount/linalg.hpp"
#include "orbcount/local_analysis.hpp"
#include "orbcount/maximal_order.hpp"
#include "orbcount/orbital.hpp"
#include "orbcount/polynomial.hpp"
#include "orbcount/primes.hpp"
#include "orbcount/serialize.hpp"
