#pragma once

#include "cauchon.hpp"
#include "cgl.hpp"
#include "grading.hpp"
#include "groebner.hpp"
#include "ideals.hpp"
#include "linalg.hpp"
#include "pbracket.hpp"
#include "qpoly.hpp"
#include "strata.hpp"
