// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_DIVPOLY_HPP
#define KAPPA_DIVPOLY_HPP

#include "kappa/weierstrass.hpp"

namespace kappa {

// Reduced division polynomial f_n in x alone:
//   psi_n = f_n            for n odd,
//   psi_n = psi_2 * f_n    for n even,
// where psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
// For odd n the roots of f_n are the x-coordinates of E[n] \ {O}.
IntegerPolynomial division_polynomial(const WeierstrassCurve& E, unsigned n);

// psi_2^2, the monitor of 2-torsion and of y-solvability: for a point
// (x, y) on E, (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
IntegerPolynomial two_torsion_polynomial(const WeierstrassCurve& E);

} // namespace kappa

#endif
