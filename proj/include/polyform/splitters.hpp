#pragma once

#include "polyform/splitters/constructions.hpp"
#include "polyform/splitters/splitter.hpp"
