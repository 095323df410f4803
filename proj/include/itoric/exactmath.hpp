#pragma once

#include "itoric/exactmath/lattice.hpp"
#include "itoric/exactmath/lp.hpp"
#include "itoric/exactmath/matrix.hpp"
#include "itoric/exactmath/minors.hpp"
#include "itoric/exactmath/normal_form.hpp"
