#pragma once

#include "qbcs/axioms.hpp"
#include "qbcs/costs.hpp"
#include "qbcs/cultures.hpp"
#include "qbcs/election.hpp"
#include "qbcs/election_io.hpp"
#include "qbcs/error.hpp"
#include "qbcs/experiments.hpp"
#include "qbcs/queries.hpp"
#include "qbcs/query_log.hpp"
#include "qbcs/rng.hpp"
#include "qbcs/scoring.hpp"
#include "qbcs/strategies.hpp"
