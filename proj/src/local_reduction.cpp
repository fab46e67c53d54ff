// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
//
// Tate's algorithm over Q_l, all fiber types, following the classical
// step structure.  Translations are applied to a working copy of the
// coefficients; the b-quantities are recomputed on demand.

#include "kappa/local_reduction.hpp"

#include <cassert>
#include <sstream>

namespace kappa {

namespace {

Int pow_int(const Int& base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("inv_mod: not invertible");
    return r;
}

int val(const Int& x, const Int& p) {
    if (x == 0)
        return 1 << 20; // effectively infinite
    return ord_p(x, p);
}

// Working Weierstrass coefficients under u = 1 translations.
struct Model {
    Int a1, a2, a3, a4, a6;

    void translate(const Int& r, const Int& s, const Int& t) {
        Int A1 = a1 + 2 * s;
        Int A2 = a2 - s * a1 + 3 * r - s * s;
        Int A3 = a3 + r * a1 + 2 * t;
        Int A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        Int A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = A1;
        a2 = A2;
        a3 = A3;
        a4 = A4;
        a6 = A6;
    }

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }

    Int f(const Int& x, const Int& y) const {
        return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
    }
    Int fx(const Int& x, const Int& y) const { return a1 * y - 3 * x * x - 2 * a2 * x - a4; }
    Int fy(const Int& x, const Int& y) const { return 2 * y + a1 * x + a3; }
};

// Singular point of the reduction mod l (unique node or cusp).
std::pair<Int, Int> singular_point(const Model& m, const Int& l) {
    if (l == 2) {
        for (Int x = 0; x < 2; ++x)
            for (Int y = 0; y < 2; ++y)
                if (mod(m.f(x, y), l) == 0 && mod(m.fx(x, y), l) == 0 && mod(m.fy(x, y), l) == 0)
                    return {x, y};
    } else {
        Int inv2 = inv_mod(2, l);
        for (Int x = 0; x < l; ++x) {
            Int y = mod(-(m.a1 * x + m.a3) * inv2, l);
            if (mod(m.f(x, y), l) == 0 && mod(m.fx(x, y), l) == 0)
                return {x, y};
        }
    }
    throw Error("singular_point: no singular point found");
}

// a X^2 + b X + c over F_l, a a unit.
struct QuadraticShape {
    bool repeated;       // double root over the algebraic closure
    Int double_root;     // meaningful when repeated
    int rational_roots;  // distinct roots lying in F_l (0, 1 when repeated, or 2)
};

QuadraticShape quadratic_shape(const Int& a, const Int& b, const Int& c, const Int& l) {
    QuadraticShape q{false, 0, 0};
    if (l == 2) {
        // separable iff the derivative b is a unit
        q.repeated = (mod(b, l) == 0);
        if (q.repeated) {
            q.double_root = mod(c * inv_mod(mod(a, l), l), l); // X^2 = c/a, Frobenius fixed
            q.rational_roots = 1;
        } else {
            for (Int x = 0; x < 2; ++x)
                if (mod(a * x * x + b * x + c, l) == 0)
                    ++q.rational_roots;
        }
        return q;
    }
    Int disc = mod(b * b - 4 * a * c, l);
    if (disc == 0) {
        q.repeated = true;
        q.double_root = mod(-b * inv_mod(mod(2 * a, l), l), l);
        q.rational_roots = 1;
    } else {
        q.rational_roots = legendre_symbol(disc, l) == 1 ? 2 : 0;
    }
    return q;
}

// Root structure of the monic cubic T^3 + aT^2 + bT + c over F_l.
struct CubicShape {
    int rational_roots = 0;    // counted without multiplicity
    bool has_repeated = false; // over the closure (such a root is F_l-rational)
    Int repeated_root = 0;
    bool triple = false;
};

CubicShape cubic_shape(const Int& a, const Int& b, const Int& c, const Int& l) {
    CubicShape out;
    for (Int t = 0; t < l; ++t) {
        if (mod(((t + a) * t + b) * t + c, l) != 0)
            continue;
        ++out.rational_roots;
        // multiplicity via synthetic division
        Int q1 = mod(a + t, l);
        Int q0 = mod(b + q1 * t, l);
        // quotient T^2 + q1 T + q0
        if (mod((t + q1) * t + q0, l) == 0) {
            out.has_repeated = true;
            out.repeated_root = t;
            Int r0 = mod(q1 + t, l);
            if (mod(t + r0, l) == 0)
                out.triple = true;
        }
    }
    return out;
}

struct TateResult {
    ReductionType type;
    KodairaSymbol kodaira;
    long c;
    long ord_delta;
};

TateResult tate_core(const WeierstrassCurve& E, const Int& l) {
    const auto& inv = E.invariants();
    long n = inv.disc % l == 0 ? ord_p(inv.disc, l) : 0;
    if (n == 0)
        return {ReductionType::Good, KodairaSymbol::I(0), 1, 0};

    Model m{E.a1(), E.a2(), E.a3(), E.a4(), E.a6()};
    Int l2 = l * l, l3 = l2 * l, l4 = l3 * l;

    // move the singular point of the reduction to the origin
    auto [x0, y0] = singular_point(m, l);
    m.translate(x0, 0, y0);
    assert(val(m.a3, l) >= 1 && val(m.a4, l) >= 1 && val(m.a6, l) >= 1);

    if (val(m.b2(), l) == 0) {
        // type I_n: node; tangents split iff T^2 + a1 T - a2 splits over F_l
        auto tangent = quadratic_shape(1, m.a1, -m.a2, l);
        assert(!tangent.repeated);
        bool split = tangent.rational_roots == 2;
        long c = split ? n : (n % 2 == 0 ? 2 : 1);
        return {split ? ReductionType::SplitMultiplicative : ReductionType::NonsplitMultiplicative,
                KodairaSymbol::I(n), c, n};
    }

    if (val(m.a6, l) < 2)
        return {ReductionType::Additive, {KodairaSymbol::Family::II, 0}, 1, n};
    if (val(m.b8(), l) < 3)
        return {ReductionType::Additive, {KodairaSymbol::Family::III, 0}, 2, n};
    if (val(m.b6(), l) < 3) {
        auto q = quadratic_shape(1, m.a3 / l, -(m.a6 / l2), l);
        assert(!q.repeated);
        return {ReductionType::Additive, {KodairaSymbol::Family::IV, 0}, q.rational_roots == 2 ? 3 : 1, n};
    }

    // normalize so that l | a1, a2;  l^2 | a3, a4;  l^3 | a6
    if (l == 2) {
        bool done = false;
        for (Int s = 0; s < 2 && !done; ++s)
            for (Int t = 0; t < 8 && !done; ++t) {
                Model probe = m;
                probe.translate(0, s, t);
                if (val(probe.a1, l) >= 1 && val(probe.a2, l) >= 1 && val(probe.a3, l) >= 2 &&
                    val(probe.a4, l) >= 2 && val(probe.a6, l) >= 3) {
                    m = probe;
                    done = true;
                }
            }
        if (!done)
            throw Error("tate_local_data: normalization failed at 2");
    } else {
        Int s = mod(-m.a1 * inv_mod(2, l), l);
        m.translate(0, s, 0);
        Int t = mod(-m.a3 * inv_mod(2, l2), l2);
        m.translate(0, 0, t);
    }
    assert(val(m.a1, l) >= 1 && val(m.a2, l) >= 1 && val(m.a3, l) >= 2 && val(m.a4, l) >= 2 &&
           val(m.a6, l) >= 3);

    // cubic T^3 + (a2/l) T^2 + (a4/l^2) T + (a6/l^3)
    auto cubic = cubic_shape(mod(m.a2 / l, l), mod(m.a4 / l2, l), mod(m.a6 / l3, l), l);

    if (!cubic.has_repeated) {
        long c = 1 + cubic.rational_roots;
        assert(c == 1 || c == 2 || c == 4);
        return {ReductionType::Additive, KodairaSymbol::IStar(0), c, n};
    }

    if (!cubic.triple) {
        // I_m* chain: translate the double root to T = 0
        m.translate(l * cubic.repeated_root, 0, 0);
        assert(val(m.a2, l) == 1 && val(m.a3, l) >= 2 && val(m.a4, l) >= 3 && val(m.a6, l) >= 4);
        long mm = 1;
        unsigned k = 2;
        for (;;) {
            if (mm > n)
                throw Error("tate_local_data: I_m* chain failed to terminate");
            Int lk = pow_int(l, k);
            auto qy = quadratic_shape(1, m.a3 / lk, -(m.a6 / (lk * lk)), l);
            if (!qy.repeated)
                return {ReductionType::Additive, KodairaSymbol::IStar(mm), qy.rational_roots == 2 ? 4 : 2, n};
            m.translate(0, 0, lk * qy.double_root);
            ++mm;

            auto qx = quadratic_shape(mod(m.a2 / l, l), m.a4 / (lk * l), m.a6 / (lk * lk * l), l);
            if (!qx.repeated)
                return {ReductionType::Additive, KodairaSymbol::IStar(mm), qx.rational_roots == 2 ? 4 : 2, n};
            m.translate(lk * qx.double_root, 0, 0);
            ++mm;
            ++k;
        }
    }

    // triple root: translate it to T = 0
    m.translate(l * cubic.repeated_root, 0, 0);
    assert(val(m.a2, l) >= 2 && val(m.a3, l) >= 2 && val(m.a4, l) >= 3 && val(m.a6, l) >= 4);

    auto qy = quadratic_shape(1, m.a3 / l2, -(m.a6 / l4), l);
    if (!qy.repeated)
        return {ReductionType::Additive, {KodairaSymbol::Family::IVStar, 0}, qy.rational_roots == 2 ? 3 : 1, n};
    m.translate(0, 0, l2 * qy.double_root);

    if (val(m.a4, l) < 4)
        return {ReductionType::Additive, {KodairaSymbol::Family::IIIStar, 0}, 2, n};
    if (val(m.a6, l) < 6)
        return {ReductionType::Additive, {KodairaSymbol::Family::IIStar, 0}, 1, n};

    throw NotMinimalError("tate_local_data: model is not minimal at " + l.get_str());
}

} // namespace

LocalReductionData tate_local_data(const WeierstrassCurve& E_min, const Int& l) {
    if (!is_prime(l))
        throw Error("tate_local_data: " + l.get_str() + " is not prime");
    TateResult r = tate_core(E_min, l);
    return {l, r.type, r.kodaira, r.c, r.ord_delta};
}

SplitType split_type(const WeierstrassCurve& E_min, const Int& l) {
    TateResult r = tate_core(E_min, l);
    if (r.type == ReductionType::SplitMultiplicative)
        return SplitType::Split;
    if (r.type == ReductionType::NonsplitMultiplicative)
        return SplitType::Nonsplit;
    throw NotMultiplicativeError("split_type: reduction at " + l.get_str() + " is not multiplicative");
}

Int nonsingular_count(const LocalReductionData& data, std::optional<Int> a_l) {
    const Int& l = data.prime;
    switch (data.type) {
    case ReductionType::Good:
        if (!a_l)
            throw MissingTraceError("nonsingular_count: good reduction needs the trace a_l");
        return l + 1 - *a_l;
    case ReductionType::SplitMultiplicative:
        return l - 1;
    case ReductionType::NonsplitMultiplicative:
        return l + 1;
    case ReductionType::Additive:
        return l;
    }
    throw Error("nonsingular_count: unreachable");
}

std::vector<Int> bad_primes(const WeierstrassCurve& E_min) {
    return factor_integer(E_min.invariants().disc);
}

std::string KodairaSymbol::to_string() const {
    switch (family) {
    case Family::In:
        return "I" + std::to_string(n);
    case Family::InStar:
        return "I" + std::to_string(n) + "*";
    case Family::II:
        return "II";
    case Family::III:
        return "III";
    case Family::IV:
        return "IV";
    case Family::IVStar:
        return "IV*";
    case Family::IIIStar:
        return "III*";
    case Family::IIStar:
        return "II*";
    }
    return "?";
}

std::string reduction_type_name(ReductionType t) {
    switch (t) {
    case ReductionType::Good:
        return "good";
    case ReductionType::SplitMultiplicative:
        return "split-mult";
    case ReductionType::NonsplitMultiplicative:
        return "nonsplit-mult";
    case ReductionType::Additive:
        return "additive";
    }
    return "?";
}

std::string report_line(const LocalReductionData& data) {
    std::ostringstream os;
    os << "l=" << data.prime << " type=" << reduction_type_name(data.type)
       << " kodaira=" << data.kodaira.to_string() << " c=" << data.tamagawa
       << " ordDelta=" << data.ord_delta;
    return os.str();
}

} // namespace kappa
