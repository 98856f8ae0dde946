#pragma once

#include "arboreal/belyi.hpp"
#include "arboreal/bipoly.hpp"
#include "arboreal/dynamics.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/modpoly.hpp"
#include "arboreal/monodromy.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/padic.hpp"
#include "arboreal/permutation.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rng.hpp"
#include "arboreal/specialization.hpp"
#include "arboreal/stabchain.hpp"
#include "arboreal/tree.hpp"
