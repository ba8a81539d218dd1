#pragma once

#include "jacring/decomposable.hpp"
#include "jacring/errors.hpp"
#include "jacring/fields.hpp"
#include "jacring/ivhs.hpp"
#include "jacring/lefschetz.hpp"
#include "jacring/linalg.hpp"
#include "jacring/monomial.hpp"
#include "jacring/poly.hpp"
#include "jacring/poly_io.hpp"
#include "jacring/prime.hpp"
#include "jacring/ring.hpp"
#include "jacring/rng.hpp"
