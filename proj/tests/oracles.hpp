// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
//
// Test-only reference machinery: chord-and-tangent group law over F_q
// and over Q, kept independent of the library's arithmetic paths.

#ifndef KAPPA_TESTS_ORACLES_HPP
#define KAPPA_TESTS_ORACLES_HPP

#include <optional>
#include <vector>

#include "kappa/weierstrass.hpp"

namespace kappa::oracles {

// ---- affine group law over F_q ----

struct FqPoint {
    bool infinity = true;
    Int x = 0, y = 0;
    bool operator==(const FqPoint&) const = default;
};

inline Int fq_mod(const Int& a, const Int& q) {
    Int r = a % q;
    if (r < 0)
        r += q;
    return r;
}

inline Int fq_inv(const Int& a, const Int& q) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t()) == 0)
        throw Error("fq_inv: not invertible");
    return r;
}

inline bool fq_on_curve(const WeierstrassCurve& E, const FqPoint& P, const Int& q) {
    if (P.infinity)
        return true;
    Int lhs = P.y * P.y + E.a1() * P.x * P.y + E.a3() * P.y;
    Int rhs = ((P.x + E.a2()) * P.x + E.a4()) * P.x + E.a6();
    return fq_mod(lhs - rhs, q) == 0;
}

inline FqPoint fq_neg(const WeierstrassCurve& E, const FqPoint& P, const Int& q) {
    if (P.infinity)
        return P;
    return {false, P.x, fq_mod(-P.y - E.a1() * P.x - E.a3(), q)};
}

inline FqPoint fq_add(const WeierstrassCurve& E, const FqPoint& P, const FqPoint& Q, const Int& q) {
    if (P.infinity)
        return Q;
    if (Q.infinity)
        return P;
    if (P.x == Q.x && fq_mod(P.y + Q.y + E.a1() * Q.x + E.a3(), q) == 0)
        return {};
    Int lambda;
    if (P.x == Q.x) {
        Int num = 3 * P.x * P.x + 2 * E.a2() * P.x + E.a4() - E.a1() * P.y;
        Int den = 2 * P.y + E.a1() * P.x + E.a3();
        lambda = fq_mod(num * fq_inv(fq_mod(den, q), q), q);
    } else {
        lambda = fq_mod((Q.y - P.y) * fq_inv(fq_mod(Q.x - P.x, q), q), q);
    }
    Int x3 = fq_mod(lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x, q);
    Int y3 = fq_mod(lambda * (P.x - x3) - P.y - E.a1() * x3 - E.a3(), q);
    return {false, x3, y3};
}

inline FqPoint fq_mul(const WeierstrassCurve& E, Int k, FqPoint P, const Int& q) {
    if (k < 0) {
        k = -k;
        P = fq_neg(E, P, q);
    }
    FqPoint R;
    while (k > 0) {
        if (k % 2 == 1)
            R = fq_add(E, R, P, q);
        P = fq_add(E, P, P, q);
        k /= 2;
    }
    return R;
}

inline std::vector<FqPoint> fq_points(const WeierstrassCurve& E, const Int& q) {
    std::vector<FqPoint> pts;
    pts.push_back({}); // infinity
    for (Int x = 0; x < q; ++x)
        for (Int y = 0; y < q; ++y) {
            FqPoint P{false, x, y};
            if (fq_on_curve(E, P, q))
                pts.push_back(P);
        }
    return pts;
}

inline Int fq_order(const WeierstrassCurve& E, const FqPoint& P, const Int& q) {
    Int n = 1;
    FqPoint R = P;
    while (!R.infinity) {
        R = fq_add(E, R, P, q);
        ++n;
        if (n > (q + 1) * (q + 1))
            throw Error("fq_order: runaway");
    }
    return n;
}

// ---- affine group law over Q ----

struct QPoint {
    bool infinity = true;
    Rat x = 0, y = 0;
    bool operator==(const QPoint&) const = default;
};

inline bool q_on_curve(const WeierstrassCurve& E, const QPoint& P) {
    if (P.infinity)
        return true;
    Rat lhs = P.y * P.y + E.a1() * P.x * P.y + E.a3() * P.y;
    Rat rhs = ((P.x + E.a2()) * P.x + E.a4()) * P.x + E.a6();
    return lhs == rhs;
}

inline QPoint q_add(const WeierstrassCurve& E, const QPoint& P, const QPoint& Q) {
    if (P.infinity)
        return Q;
    if (Q.infinity)
        return P;
    if (P.x == Q.x && P.y + Q.y + E.a1() * Q.x + E.a3() == 0)
        return {};
    Rat lambda;
    if (P.x == Q.x)
        lambda = (3 * P.x * P.x + 2 * E.a2() * P.x + E.a4() - E.a1() * P.y) /
                 (2 * P.y + E.a1() * P.x + E.a3());
    else
        lambda = (Q.y - P.y) / (Q.x - P.x);
    QPoint R;
    R.infinity = false;
    R.x = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
    R.y = lambda * (P.x - R.x) - P.y - E.a1() * R.x - E.a3();
    return R;
}

inline QPoint q_mul(const WeierstrassCurve& E, long k, const QPoint& P) {
    QPoint R;
    for (long i = 0; i < k; ++i)
        R = q_add(E, R, P);
    return R;
}

} // namespace kappa::oracles

#endif
