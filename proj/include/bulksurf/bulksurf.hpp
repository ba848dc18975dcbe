#pragma once

#include "bulksurf/errors.hpp"
#include "bulksurf/model/species.hpp"
#include "bulksurf/model/sorption.hpp"
#include "bulksurf/model/reactions.hpp"
#include "bulksurf/model/sampling.hpp"
#include "bulksurf/model/checks.hpp"
#include "bulksurf/exponents/rational.hpp"
#include "bulksurf/exponents/admissibility.hpp"
#include "bulksurf/disc/grid.hpp"
#include "bulksurf/disc/velocity.hpp"
#include "bulksurf/disc/operators.hpp"
#include "bulksurf/disc/state.hpp"
#include "bulksurf/disc/coupling.hpp"
#include "bulksurf/disc/snapshot.hpp"
#include "bulksurf/stepper/config.hpp"
#include "bulksurf/stepper/linear_solve.hpp"
#include "bulksurf/stepper/problem.hpp"
#include "bulksurf/stepper/step.hpp"
#include "bulksurf/stepper/blowup.hpp"
#include "bulksurf/stepper/run.hpp"
#include "bulksurf/harness/scenario.hpp"
#include "bulksurf/harness/properties.hpp"
#include "bulksurf/io/csv.hpp"
#include "bulksurf/io/config.hpp"
