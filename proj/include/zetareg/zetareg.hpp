#pragma once

#include "zetareg/continuation.hpp"
#include "zetareg/dipole.hpp"
#include "zetareg/elementary.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/euler_product.hpp"
#include "zetareg/numerics.hpp"
#include "zetareg/precision.hpp"
#include "zetareg/prime_formula.hpp"
#include "zetareg/primes.hpp"
#include "zetareg/rational.hpp"
#include "zetareg/special_numbers.hpp"
