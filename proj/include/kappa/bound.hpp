// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_BOUND_HPP
#define KAPPA_BOUND_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kappa/galois_image.hpp"
#include "kappa/local_reduction.hpp"
#include "kappa/local_torsion.hpp"

namespace kappa {

struct BoundInput {
    WeierstrassCurve curve;
    Int p;
    int n = 1;
    int rank = 0; // externally supplied Mordell-Weil rank
};

struct ConditionStatus {
    bool holds = false;
    std::string detail;
};

// Per-prime defect nu_l of the exponent bound; data.prime must differ
// from p.
int nu_l(const LocalReductionData& data, const Int& p, int n);

// 2n(r-1) - 2 sum nu_l, unclamped; local_data must cover every prime
// dividing the minimal discriminant.
long bound_exponent(const BoundInput& input, const std::vector<LocalReductionData>& local_data);

struct BoundReport {
    BoundInput input;
    WeierstrassCurve minimal_curve;
    std::vector<LocalReductionData> local_data; // bad primes, ascending
    SurjectivityVerdict full_status;
    TorsionVerdict tor_status;
    ConditionStatus red_l, red_p, disc;
    std::vector<std::pair<Int, int>> nu_table; // l -> nu_l, l != p, ascending
    long exponent_bound = 0;                   // raw, possibly negative
    long exponent_bound_clamped = 0;
    bool certified = false;
    bool p3_caveat = false;
    std::string refusal_reason; // nonempty when certification is refused outright

    BoundReport(BoundInput in, WeierstrassCurve minimal)
        : input(std::move(in)), minimal_curve(std::move(minimal)) {}
};

// Full certification pipeline: minimal model, local data at all bad
// primes, (Full) and (Tor), the informational (Red_l)/(Red_p)/(Disc)
// conditions, and the exponent bound.  Degrades to certified = false,
// never throws for prime p.
BoundReport full_report(const BoundInput& input, bool deep = false, size_t sample_bound = 1000);

std::string render_text(const BoundReport& r);
nlohmann::ordered_json render_json(const BoundReport& r);

} // namespace kappa

#endif
