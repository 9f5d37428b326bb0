#pragma once

#include "lintersect/arith.hpp"
#include "lintersect/bounds.hpp"
#include "lintersect/error.hpp"
#include "lintersect/family_io.hpp"
#include "lintersect/ffpoly.hpp"
#include "lintersect/linalg.hpp"
#include "lintersect/multilinear.hpp"
#include "lintersect/random_family.hpp"
#include "lintersect/search.hpp"
#include "lintersect/setfam.hpp"
#include "lintersect/witness.hpp"
