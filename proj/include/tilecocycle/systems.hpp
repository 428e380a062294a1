#pragma once

#include "tilecocycle/substitution.hpp"

namespace tc {

// Thue-Morse + period-doubling on unit interval tiles, theta_bar = 2.
// Rule 0: a -> ab, b -> ba. Rule 1: a -> ab, b -> aa.
SubstitutionSystem make_tmpd();

// Fibonacci, single rule a -> ab, b -> a, lengths (phi, 1) in module Z + Z*phi.
SubstitutionSystem make_fibonacci();

// 2D Thue-Morse-style block substitution on unit squares, q = 2, two colors:
// a -> [a b; b a], b -> [b a; a b].
SubstitutionSystem make_block2d();

// Deliberately invalid fixture: a -> a under theta_bar = 2 (covering fails).
SubstitutionSystem make_broken_covering();

}  // namespace tc
