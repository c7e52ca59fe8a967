#pragma once

#include "character.hpp"
#include "covariant.hpp"
#include "duality.hpp"
#include "function.hpp"
#include "group.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "quotient.hpp"
#include "rng.hpp"
#include "verify.hpp"
