// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_WEIERSTRASS_HPP
#define KAPPA_WEIERSTRASS_HPP

#include <string>
#include <utility>

#include "kappa/numth.hpp"

namespace kappa {

struct CurveInvariants {
    Int b2, b4, b6, b8;
    Int c4, c6;
    Int disc;
    Rat j;
};

// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients
// and nonzero discriminant.
class WeierstrassCurve {
public:
    WeierstrassCurve(Int a1, Int a2, Int a3, Int a4, Int a6);

    const Int& a1() const { return a1_; }
    const Int& a2() const { return a2_; }
    const Int& a3() const { return a3_; }
    const Int& a4() const { return a4_; }
    const Int& a6() const { return a6_; }

    const CurveInvariants& invariants() const { return inv_; }

    // "[a1,a2,a3,a4,a6]"
    std::string display() const;

    bool operator==(const WeierstrassCurve& o) const {
        return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
    }

private:
    Int a1_, a2_, a3_, a4_, a6_;
    CurveInvariants inv_;
};

CurveInvariants compute_invariants(const WeierstrassCurve& E);

// x = u^2 x' + r,  y = u^3 y' + u^2 s x' + t
struct CoordinateChange {
    Rat u = 1, r = 0, s = 0, t = 0;

    static CoordinateChange identity() { return {}; }
    bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }

    // this followed by o
    CoordinateChange compose(const CoordinateChange& o) const;
    CoordinateChange inverse() const;

    bool operator==(const CoordinateChange& o) const = default;
};

// Applies the change of coordinates; the image model must be integral
// (NonIntegralResultError otherwise).
WeierstrassCurve transform_curve(const WeierstrassCurve& E, const CoordinateChange& phi);

// Global minimal model (Laska-Kraus-Connell) and the change of
// coordinates mapping E onto it.
std::pair<WeierstrassCurve, CoordinateChange> minimal_model(const WeierstrassCurve& E);

} // namespace kappa

#endif
