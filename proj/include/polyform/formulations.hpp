#pragma once

#include "polyform/formulations/bundle.hpp"
#include "polyform/formulations/classic.hpp"
#include "polyform/formulations/core.hpp"
#include "polyform/formulations/parameterized.hpp"
#include "polyform/formulations/registry.hpp"
