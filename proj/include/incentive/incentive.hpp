/// Convenience header pulling in the whole library.

#pragma once

#include "incentive/concavize.hpp"
#include "incentive/errors.hpp"
#include "incentive/exact.hpp"
#include "incentive/greedy.hpp"
#include "incentive/io.hpp"
#include "incentive/model.hpp"
#include "incentive/parallel.hpp"
#include "incentive/policies.hpp"
#include "incentive/rng.hpp"
#include "incentive/scenario.hpp"
#include "incentive/selfcheck.hpp"
#include "incentive/stochastic.hpp"
#include "incentive/types.hpp"
