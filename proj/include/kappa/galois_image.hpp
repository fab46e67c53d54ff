// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_GALOIS_IMAGE_HPP
#define KAPPA_GALOIS_IMAGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "kappa/weierstrass.hpp"

namespace kappa {

// Characteristic-polynomial data of Frobenius at an auxiliary good prime:
// trace t = a_l mod p and determinant d = l mod p.
struct SampledTrace {
    Int l;
    Int t;
    Int d;
    bool operator==(const SampledTrace&) const = default;
};

// Witness predicates for the three subgroup-exclusion flags.
bool is_split_witness(const SampledTrace& s, const Int& p);
bool is_nonsplit_witness(const SampledTrace& s, const Int& p);
bool is_exceptional_witness(const SampledTrace& s, const Int& p);

struct ImageEvidence {
    Int p;
    std::vector<SampledTrace> sampled;
    std::optional<SampledTrace> split_witness;
    std::optional<SampledTrace> nonsplit_witness;
    std::optional<SampledTrace> exceptional_witness;

    bool has_split_nontrivial() const { return split_witness.has_value(); }
    bool has_nonsplit() const { return nonsplit_witness.has_value(); }
    bool rules_out_exceptional() const { return exceptional_witness.has_value(); }
};

struct SurjectivityVerdict {
    enum class Kind { ProvenSurjective, Inconclusive };
    Kind kind = Kind::Inconclusive;
    ImageEvidence evidence;

    bool proven() const { return kind == Kind::ProvenSurjective; }
};

// One-sided certificate that the mod-p image is all of GL_2(Z/pZ).
// Samples characteristic polynomials at auxiliary good primes in
// increasing order (at most sample_bound of them, bad primes and l = 2
// skipped); determinant surjectivity is automatic and is not sampled.
// ProvenSurjective is a proof; Inconclusive is not a disproof.
SurjectivityVerdict prove_surjective(const WeierstrassCurve& E_min, const Int& p,
                                     size_t sample_bound = 1000);

// "full(p=<p>): proven|inconclusive witnesses=[(l,t,d)...] flags=<3 bits>"
std::string report_line(const SurjectivityVerdict& v);

} // namespace kappa

#endif
