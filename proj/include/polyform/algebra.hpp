#pragma once

#include "polyform/algebra/monomial.hpp"
#include "polyform/algebra/pairing.hpp"
#include "polyform/algebra/polynomial.hpp"
#include "polyform/algebra/polynomial_io.hpp"
#include "polyform/algebra/primes.hpp"
