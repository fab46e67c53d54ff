// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
//
// Certificate via the classification of proper subgroups of GL_2(F_p):
// an element with nonzero trace and split semisimple part rules out the
// nonsplit Cartan normalizer, one with irreducible characteristic
// polynomial rules out Borel and the split Cartan normalizer, and an
// element whose projective order exceeds 5 rules out the exceptional
// groups.  With surjective determinant these leave only GL_2 itself.

#include "kappa/galois_image.hpp"

#include <sstream>

#include "kappa/frobenius.hpp"

namespace kappa {

namespace {

Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

} // namespace

bool is_split_witness(const SampledTrace& s, const Int& p) {
    if (mod(s.t, p) == 0)
        return false;
    Int disc = mod(s.t * s.t - 4 * s.d, p);
    return disc != 0 && legendre_symbol(disc, p) == 1;
}

bool is_nonsplit_witness(const SampledTrace& s, const Int& p) {
    if (mod(s.t, p) == 0)
        return false;
    Int disc = mod(s.t * s.t - 4 * s.d, p);
    return disc != 0 && legendre_symbol(disc, p) == -1;
}

bool is_exceptional_witness(const SampledTrace& s, const Int& p) {
    Int d = mod(s.d, p);
    if (d == 0)
        return false;
    Int dinv;
    mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
    Int u = mod(s.t * s.t * dinv, p);
    if (u == 0 || u == 1 || u == 2 || u == 4)
        return false;
    return mod(u * u - 3 * u + 1, p) != 0;
}

SurjectivityVerdict prove_surjective(const WeierstrassCurve& E_min, const Int& p, size_t sample_bound) {
    if (p <= 3)
        throw SmallPrimeError("prove_surjective: requires p > 3");
    if (sample_bound < 1)
        throw Error("prove_surjective: sample_bound must be >= 1");

    SurjectivityVerdict v;
    v.evidence.p = p;
    const Int disc = E_min.invariants().disc;

    Int l = 2; // advanced before use; l = 2 itself is skipped with the bad primes
    for (size_t taken = 0; taken < sample_bound;) {
        l = next_prime(l);
        if (l == p || disc % l == 0)
            continue;
        ++taken;
        FrobeniusData fr = trace_of_frobenius(E_min, l);
        SampledTrace s{l, mod(fr.trace, p), mod(l, p)};
        v.evidence.sampled.push_back(s);
        if (!v.evidence.split_witness && is_split_witness(s, p))
            v.evidence.split_witness = s;
        if (!v.evidence.nonsplit_witness && is_nonsplit_witness(s, p))
            v.evidence.nonsplit_witness = s;
        if (!v.evidence.exceptional_witness && is_exceptional_witness(s, p))
            v.evidence.exceptional_witness = s;
        if (v.evidence.has_split_nontrivial() && v.evidence.has_nonsplit() &&
            v.evidence.rules_out_exceptional()) {
            v.kind = SurjectivityVerdict::Kind::ProvenSurjective;
            return v;
        }
    }
    v.kind = SurjectivityVerdict::Kind::Inconclusive;
    return v;
}

std::string report_line(const SurjectivityVerdict& v) {
    std::ostringstream os;
    os << "full(p=" << v.evidence.p << "): " << (v.proven() ? "proven" : "inconclusive") << " witnesses=[";
    bool first = true;
    for (const auto& w : {v.evidence.split_witness, v.evidence.nonsplit_witness, v.evidence.exceptional_witness}) {
        if (!w)
            continue;
        if (!first)
            os << ",";
        os << "(" << w->l << "," << w->t << "," << w->d << ")";
        first = false;
    }
    os << "] flags=" << (v.evidence.has_split_nontrivial() ? 1 : 0) << (v.evidence.has_nonsplit() ? 1 : 0)
       << (v.evidence.rules_out_exceptional() ? 1 : 0);
    return os.str();
}

} // namespace kappa
