#pragma once
// Everything at once.

#include "common.hpp"
#include "special_functions.hpp"
#include "minkowski_core.hpp"
#include "quadrature_rules.hpp"
#include "stieltjes_quadrature.hpp"
#include "nufft.hpp"
#include "oscillatory.hpp"
#include "identities.hpp"
#include "appendix_refutation.hpp"
#include "io.hpp"
#include "acceptance.hpp"
