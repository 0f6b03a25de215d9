#pragma once

#include "multicentric/core.hpp"
#include "multicentric/pointset.hpp"
#include "multicentric/polynomial.hpp"
#include "multicentric/linalg.hpp"
#include "multicentric/random.hpp"
#include "multicentric/element.hpp"
#include "multicentric/transform.hpp"
#include "multicentric/algebra.hpp"
#include "multicentric/calculus.hpp"
#include "multicentric/verify.hpp"
