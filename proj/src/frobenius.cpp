// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/frobenius.hpp"

#include <cstdint>
#include <vector>

namespace kappa {

FrobeniusData trace_of_frobenius(const WeierstrassCurve& E_min, const Int& p) {
    if (p == 2)
        throw EvenPrimeError("trace_of_frobenius: p = 2 is excluded");
    if (!is_prime(p))
        throw Error("trace_of_frobenius: " + p.get_str() + " is not prime");
    if (E_min.invariants().disc % p == 0)
        throw BadReductionError("trace_of_frobenius: bad reduction at " + p.get_str());
    if (!p.fits_ulong_p() || p >= Int(1L << 31))
        throw Error("trace_of_frobenius: prime too large for the Legendre-sum counter");

    // complete the square: #E(F_p) counts y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const uint64_t up = p.get_ui();
    const auto& inv = E_min.invariants();
    auto red = [&](const Int& a) { return mpz_fdiv_ui(a.get_mpz_t(), up); };
    const uint64_t c3 = 4 % up, c2 = red(inv.b2), c1 = red(2 * inv.b4), c0 = red(inv.b6);

    // squares table: 0 -> zero, 1 -> residue, 2 -> non-residue
    std::vector<uint8_t> chi(up, 2);
    chi[0] = 0;
    for (uint64_t t = 1; t <= up / 2; ++t)
        chi[t * t % up] = 1;

    long long sum = 0;
    for (uint64_t x = 0; x < up; ++x) {
        uint64_t g = ((c3 * x + c2) % up * x + c1) % up * x % up;
        g = (g + c0) % up;
        uint8_t c = chi[g];
        sum += (c == 1) ? 1 : (c == 2 ? -1 : 0);
    }

    FrobeniusData out;
    out.prime = p;
    out.trace = Int(static_cast<long>(-sum));
    out.count = p + 1 - out.trace;

    if (out.trace * out.trace > 4 * p)
        throw Error("trace_of_frobenius: Hasse bound violated (internal error)");
    if (out.count % p == 0) {
        // a_p = 1 mod p plus Hasse forces a_p = 1 for p >= 7; the short
        // intervals at 3 and 5 admit one more residue each
        if (p >= 7 && out.trace != 1)
            throw Error("trace_of_frobenius: anomalous-count consistency violated");
        if (p == 5 && out.trace != 1 && out.trace != -4)
            throw Error("trace_of_frobenius: p = 5 count consistency violated");
        if (p == 3 && out.trace != 1 && out.trace != -2)
            throw Error("trace_of_frobenius: p = 3 count consistency violated");
    }
    return out;
}

} // namespace kappa
