#pragma once

#include "jordanis/algebra.hpp"
#include "jordanis/classical.hpp"
#include "jordanis/deformation.hpp"
#include "jordanis/errors.hpp"
#include "jordanis/geometry.hpp"
#include "jordanis/linalg.hpp"
#include "jordanis/rng.hpp"
#include "jordanis/structure.hpp"
