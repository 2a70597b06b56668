#pragma once

#include <vector>

#include "fibercheck/upoly.hpp"

namespace fibercheck::detail {

/// Integer polynomial, constant term first.
using ZPoly = std::vector<Integer>;

/// Irreducible factors over Z of a squarefree primitive polynomial of degree
/// >= 1 (Berlekamp-Zassenhaus: Cantor-Zassenhaus modulo a small prime,
/// Hensel lifting, exhaustive recombination). Factors are primitive with
/// positive leading coefficient.
std::vector<ZPoly> factor_squarefree_primitive(const ZPoly& f);

}  // namespace fibercheck::detail
