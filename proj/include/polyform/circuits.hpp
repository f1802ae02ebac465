#pragma once

#include "polyform/circuits/circuit.hpp"
#include "polyform/circuits/expand.hpp"
#include "polyform/circuits/homogenize.hpp"
#include "polyform/circuits/netlist.hpp"
