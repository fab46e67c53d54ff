// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/divpoly.hpp"

#include <map>

namespace kappa {

namespace {

struct DivPolyTable {
    const CurveInvariants inv;
    IntegerPolynomial B; // psi_2^2
    std::map<unsigned, IntegerPolynomial> memo;

    explicit DivPolyTable(const WeierstrassCurve& E) : inv(E.invariants()) {
        B = IntegerPolynomial({inv.b6, 2 * inv.b4, inv.b2, Int(4)});
        memo[0] = IntegerPolynomial{};
        memo[1] = IntegerPolynomial({Int(1)});
        memo[2] = IntegerPolynomial({Int(1)});
        memo[3] = IntegerPolynomial({inv.b8, 3 * inv.b6, 3 * inv.b4, inv.b2, Int(3)});
        memo[4] = IntegerPolynomial({inv.b4 * inv.b8 - inv.b6 * inv.b6, inv.b2 * inv.b8 - inv.b4 * inv.b6,
                                     10 * inv.b8, 10 * inv.b6, 5 * inv.b4, inv.b2, Int(2)});
    }

    const IntegerPolynomial& f(unsigned n) {
        auto it = memo.find(n);
        if (it != memo.end())
            return it->second;
        IntegerPolynomial r;
        unsigned m = n / 2;
        if (n % 2 == 1) {
            // f_{2m+1} = f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3, with B^2 on the even side
            IntegerPolynomial lhs = f(m + 2) * f(m) * f(m) * f(m);
            IntegerPolynomial rhs = f(m - 1) * f(m + 1) * f(m + 1) * f(m + 1);
            r = (m % 2 == 0) ? (lhs * (B * B) - rhs) : (lhs - rhs * (B * B));
        } else {
            // f_{2m} = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
            r = f(m) * (f(m + 2) * f(m - 1) * f(m - 1) - f(m - 2) * f(m + 1) * f(m + 1));
        }
        return memo[n] = std::move(r);
    }
};

} // namespace

IntegerPolynomial division_polynomial(const WeierstrassCurve& E, unsigned n) {
    if (n < 1)
        throw Error("division_polynomial: n must be >= 1");
    DivPolyTable table(E);
    return table.f(n);
}

IntegerPolynomial two_torsion_polynomial(const WeierstrassCurve& E) {
    const auto& inv = E.invariants();
    return IntegerPolynomial({inv.b6, 2 * inv.b4, inv.b2, Int(4)});
}

} // namespace kappa
