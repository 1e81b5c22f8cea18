#pragma once

#include "cavelim/analytics.hpp"
#include "cavelim/convergence.hpp"
#include "cavelim/eliminate.hpp"
#include "cavelim/error.hpp"
#include "cavelim/evolve.hpp"
#include "cavelim/liouville.hpp"
#include "cavelim/models.hpp"
#include "cavelim/operator.hpp"
#include "cavelim/spectrum.hpp"
#include "cavelim/steady_state.hpp"
#include "cavelim/superop.hpp"
#include "cavelim/system_spec.hpp"
