// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/weierstrass.hpp"

#include <cassert>
#include <sstream>
#include <vector>

namespace kappa {

namespace {

CurveInvariants invariants_from(const Int& a1, const Int& a2, const Int& a3, const Int& a4, const Int& a6) {
    CurveInvariants v;
    v.b2 = a1 * a1 + 4 * a2;
    v.b4 = 2 * a4 + a1 * a3;
    v.b6 = a3 * a3 + 4 * a6;
    v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
    assert(4 * v.b8 == v.b2 * v.b6 - v.b4 * v.b4);
    assert(1728 * v.disc == v.c4 * v.c4 * v.c4 - v.c6 * v.c6);
    if (v.disc != 0) {
        v.j = Rat(v.c4 * v.c4 * v.c4, v.disc);
        v.j.canonicalize();
    }
    return v;
}

} // namespace

WeierstrassCurve::WeierstrassCurve(Int a1, Int a2, Int a3, Int a4, Int a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
    inv_ = invariants_from(a1_, a2_, a3_, a4_, a6_);
    if (inv_.disc == 0)
        throw SingularCurveError("discriminant vanishes for " + display());
}

std::string WeierstrassCurve::display() const {
    std::ostringstream os;
    os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
    return os.str();
}

CurveInvariants compute_invariants(const WeierstrassCurve& E) {
    return E.invariants();
}

CoordinateChange CoordinateChange::compose(const CoordinateChange& o) const {
    // (u1,r1,s1,t1) then (u2,r2,s2,t2)
    CoordinateChange c;
    c.u = u * o.u;
    c.r = u * u * o.r + r;
    c.s = u * o.s + s;
    c.t = u * u * u * o.t + u * u * s * o.r + t;
    return c;
}

CoordinateChange CoordinateChange::inverse() const {
    CoordinateChange c;
    c.u = 1 / u;
    c.r = -r / (u * u);
    c.s = -s / u;
    c.t = (r * s - t) / (u * u * u);
    return c;
}

WeierstrassCurve transform_curve(const WeierstrassCurve& E, const CoordinateChange& phi) {
    const Rat u = phi.u, r = phi.r, s = phi.s, t = phi.t;
    if (u == 0)
        throw Error("transform_curve: u must be nonzero");
    Rat a1 = (Rat(E.a1()) + 2 * s) / u;
    Rat a2 = (Rat(E.a2()) - s * E.a1() + 3 * r - s * s) / (u * u);
    Rat a3 = (Rat(E.a3()) + r * E.a1() + 2 * t) / (u * u * u);
    Rat a4 = (Rat(E.a4()) - s * E.a3() + 2 * r * E.a2() - (t + r * s) * E.a1() + 3 * r * r - 2 * s * t) /
             (u * u * u * u);
    Rat a6 = (Rat(E.a6()) + r * E.a4() + r * r * E.a2() + r * r * r - t * E.a3() - t * t - r * t * E.a1()) /
             (u * u * u * u * u * u);
    for (const Rat* q : {&a1, &a2, &a3, &a4, &a6})
        if (q->get_den() != 1)
            throw NonIntegralResultError("transform_curve: image of " + E.display() + " is not integral");
    return {Int(a1.get_num()), Int(a2.get_num()), Int(a3.get_num()), Int(a4.get_num()), Int(a6.get_num())};
}

namespace {

// Kraus: (c4, c6) with (c4^3 - c6^2)/1728 a nonzero integer arise from an
// integral model iff ord_3(c6) != 2 and, at 2, either c6 = -1 (mod 4) or
// (c4 = 0 (mod 16) and c6 = 0 or 8 (mod 32)).
bool kraus_conditions(const Int& c4, const Int& c6) {
    if (c6 != 0) {
        Int r3 = c6;
        int v3 = 0;
        while (r3 % 3 == 0 && v3 < 3) {
            r3 /= 3;
            ++v3;
        }
        if (v3 == 2)
            return false;
    }
    Int c6m4 = ((c6 % 4) + 4) % 4;
    if (c6m4 == 3)
        return true;
    Int c4m16 = ((c4 % 16) + 16) % 16;
    Int c6m32 = ((c6 % 32) + 32) % 32;
    return c4m16 == 0 && (c6m32 == 0 || c6m32 == 8);
}

// Reduced integral model with the given invariants (assumes Kraus holds).
WeierstrassCurve curve_from_c4c6(const Int& c4, const Int& c6) {
    Int b2 = (-c6) % 12;
    if (b2 < 0)
        b2 += 12;
    if (b2 > 6)
        b2 -= 12;
    Int b4 = (b2 * b2 - c4) / 24;
    Int b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
    Int a1 = ((b2 % 2) + 2) % 2;
    Int a2 = (b2 - a1) / 4;
    Int a3 = ((b6 % 2) + 2) % 2;
    Int a6 = (b6 - a3) / 4;
    Int a4 = (b4 - a1 * a3) / 2;
    return {a1, a2, a3, a4, a6};
}

} // namespace

std::pair<WeierstrassCurve, CoordinateChange> minimal_model(const WeierstrassCurve& E) {
    const auto& inv = E.invariants();
    Int u = 1;
    // per-prime exponent of u, bounded by the valuations of (c4, c6, disc)
    for (const Int& l : factor_integer(inv.disc)) {
        int dd = ord_p(inv.disc, l) / 12;
        if (dd == 0 && l != 2 && l != 3)
            continue;
        int d = dd;
        if (inv.c4 != 0)
            d = std::min(d, ord_p(inv.c4, l) / 4);
        if (inv.c6 != 0)
            d = std::min(d, ord_p(inv.c6, l) / 6);
        if (l == 2 || l == 3) {
            while (d > 0) {
                Int ud = 1;
                mpz_pow_ui(ud.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned>(d));
                Int u4 = ud * ud * ud * ud;
                if (kraus_conditions(inv.c4 / u4, inv.c6 / (u4 * ud * ud)))
                    break;
                --d;
            }
        }
        if (d > 0) {
            Int ud = 1;
            mpz_pow_ui(ud.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned>(d));
            u *= ud;
        }
    }

    Int u4 = u * u * u * u;
    Int u6 = u4 * u * u;
    WeierstrassCurve Emin = curve_from_c4c6(inv.c4 / u4, inv.c6 / u6);

    // recover (r, s, t) from the coefficient relations
    CoordinateChange phi;
    phi.u = Rat(u);
    phi.s = (Rat(u) * Emin.a1() - E.a1()) / 2;
    phi.r = (Rat(u * u) * Emin.a2() - E.a2() + phi.s * E.a1() + phi.s * phi.s) / 3;
    phi.t = (Rat(u * u * u) * Emin.a3() - E.a3() - phi.r * E.a1()) / 2;

    assert(transform_curve(E, phi) == Emin);
    return {Emin, phi};
}

} // namespace kappa
