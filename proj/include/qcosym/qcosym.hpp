#pragma once

// q-cosymplectic geometry toolkit: structures with several commuting
// clocks, their derived fields and brackets, symplectization, ODE flow,
// the fast-slow oscillator application, and the scenario/CLI layer.

#include "qcosym/chart.hpp"
#include "qcosym/cli.hpp"
#include "qcosym/config.hpp"
#include "qcosym/core.hpp"
#include "qcosym/csv.hpp"
#include "qcosym/derived_fields.hpp"
#include "qcosym/fastslow.hpp"
#include "qcosym/field_types.hpp"
#include "qcosym/flow.hpp"
#include "qcosym/scenario.hpp"
#include "qcosym/structure.hpp"
#include "qcosym/svg.hpp"
#include "qcosym/symplectization.hpp"
#include "qcosym/validate.hpp"
