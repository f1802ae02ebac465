#pragma once

#include "polyform/solvers/graph_algorithms.hpp"
#include "polyform/solvers/instances.hpp"
#include "polyform/solvers/paths.hpp"
#include "polyform/solvers/set_problems.hpp"
#include "polyform/solvers/trees.hpp"
