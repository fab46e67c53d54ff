// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_FROBENIUS_HPP
#define KAPPA_FROBENIUS_HPP

#include "kappa/weierstrass.hpp"

namespace kappa {

struct FrobeniusData {
    Int prime;
    Int count; // #E~(F_p), point at infinity included
    Int trace; // a_p = p + 1 - count
};

// Legendre-sum point count over F_p for an odd prime of good reduction.
// O(p) after one squares table; the Hasse bound is a hard assertion.
FrobeniusData trace_of_frobenius(const WeierstrassCurve& E_min, const Int& p);

} // namespace kappa

#endif
