// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_LOCAL_REDUCTION_HPP
#define KAPPA_LOCAL_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "kappa/weierstrass.hpp"

namespace kappa {

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

struct KodairaSymbol {
    enum class Family { In, InStar, II, III, IV, IVStar, IIIStar, IIStar };
    Family family = Family::In;
    long n = 0; // index for I_n and I_n*

    static KodairaSymbol I(long n) { return {Family::In, n}; }
    static KodairaSymbol IStar(long n) { return {Family::InStar, n}; }

    std::string to_string() const;
    bool operator==(const KodairaSymbol&) const = default;
};

struct LocalReductionData {
    Int prime;
    ReductionType type = ReductionType::Good;
    KodairaSymbol kodaira;
    long tamagawa = 1;
    long ord_delta = 0;
};

// Tate's algorithm at l; the input model must be minimal at l
// (NotMinimalError otherwise).
LocalReductionData tate_local_data(const WeierstrassCurve& E_min, const Int& l);

enum class SplitType { Split, Nonsplit };

// Whether the tangent directions at the node are rational over F_l
// (NotMultiplicativeError when the reduction is not multiplicative).
SplitType split_type(const WeierstrassCurve& E_min, const Int& l);

// #E~_ns(F_l); the trace a_l is required (only) for good reduction.
Int nonsingular_count(const LocalReductionData& data, std::optional<Int> a_l = std::nullopt);

// Primes of bad reduction of a minimal model, ascending.
std::vector<Int> bad_primes(const WeierstrassCurve& E_min);

std::string reduction_type_name(ReductionType t);
std::string report_line(const LocalReductionData& data);

} // namespace kappa

#endif
