#pragma once

// Umbrella header: exact computations with finite locally free commutative
// group schemes presented as finite free Hopf algebras over Z, Q, or Z/N.

#include "primel/errors.hpp"
#include "primel/ring.hpp"
#include "primel/matrix.hpp"
#include "primel/normal_form.hpp"
#include "primel/submodule.hpp"
#include "primel/algebra.hpp"
#include "primel/hopf.hpp"
#include "primel/groups.hpp"
#include "primel/scheme.hpp"
#include "primel/io.hpp"
#include "primel/names.hpp"
#include "primel/suites.hpp"
