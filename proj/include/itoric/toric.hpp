#pragma once

#include "itoric/toric/binomial.hpp"
#include "itoric/toric/fiber.hpp"
#include "itoric/toric/graver.hpp"
#include "itoric/toric/groebner.hpp"
#include "itoric/toric/markov.hpp"
#include "itoric/toric/octahedral.hpp"
