#pragma once

// Max-plus modeling of a metro line with one symmetrically operated junction:
// semiring primitives, line topology, the alternating one-step matrices and
// their two-step composition, trajectory engines, and the closed-form
// headway/frequency analytics.

#include "maxline/analytics.hpp"
#include "maxline/build.hpp"
#include "maxline/config.hpp"
#include "maxline/cycle_ratio.hpp"
#include "maxline/eigen.hpp"
#include "maxline/errors.hpp"
#include "maxline/graph.hpp"
#include "maxline/io.hpp"
#include "maxline/line.hpp"
#include "maxline/maxplus.hpp"
#include "maxline/poly.hpp"
#include "maxline/simulate.hpp"
