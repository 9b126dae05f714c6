// Umbrella header for the dihedral Dunkl library.

#pragma once

#include "dunkl/dihedral.hpp"
#include "dunkl/dunklops.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/oracle.hpp"
#include "dunkl/poly2.hpp"
#include "dunkl/special.hpp"
#include "dunkl/transform.hpp"
