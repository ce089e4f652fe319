#pragma once

#include "netcover/bench.hpp"
#include "netcover/covers.hpp"
#include "netcover/formulations.hpp"
#include "netcover/graph.hpp"
#include "netcover/instances.hpp"
#include "netcover/model.hpp"
#include "netcover/pipeline.hpp"
#include "netcover/preprocess.hpp"
#include "netcover/solver.hpp"
#include "netcover/verify.hpp"
