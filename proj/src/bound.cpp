// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/bound.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

int nu_l(const LocalReductionData& data, const Int& p, int n) {
    if (data.prime == p)
        throw SamePrimeError("nu_l: the sum runs over l != p");
    if (n < 1)
        throw Error("nu_l: level must be >= 1");
    switch (data.type) {
    case ReductionType::SplitMultiplicative: {
        Int ord(data.ord_delta);
        int v = ord == 0 ? 0 : ord_p(ord, p);
        return std::min(v, n);
    }
    case ReductionType::Additive:
        if (p == 3 && data.tamagawa == 3)
            return n;
        return 0;
    default:
        return 0;
    }
}

long bound_exponent(const BoundInput& input, const std::vector<LocalReductionData>& local_data) {
    std::vector<Int> expected = factor_integer(input.curve.invariants().disc);
    for (const Int& l : expected) {
        bool covered = false;
        for (const auto& d : local_data)
            if (d.prime == l)
                covered = true;
        if (!covered)
            throw IncompleteLocalDataError("bound_exponent: no local data at " + l.get_str());
    }
    long sum = 0;
    for (const auto& d : local_data)
        if (d.prime != input.p)
            sum += nu_l(d, input.p, input.n);
    return 2L * input.n * (input.rank - 1) - 2 * sum;
}

BoundReport full_report(const BoundInput& input, bool deep, size_t sample_bound) {
    if (!is_prime(input.p))
        throw Error("full_report: p must be prime");
    if (input.n < 1 || input.rank < 0)
        throw Error("full_report: need n >= 1 and rank >= 0");

    auto [Emin, phi] = minimal_model(input.curve);
    BoundReport r(input, Emin);

    for (const Int& l : bad_primes(Emin))
        r.local_data.push_back(tate_local_data(Emin, l));

    // (Full)
    if (input.p > 3) {
        r.full_status = prove_surjective(Emin, input.p, sample_bound);
    } else {
        r.full_status.kind = SurjectivityVerdict::Kind::Inconclusive;
        r.full_status.evidence.p = input.p;
        r.p3_caveat = (input.p == 3);
    }

    // (Tor)
    if (input.p == 2) {
        r.tor_status = check_tor(Emin, 2, deep);
        r.refusal_reason = "certification refused: the bound requires p > 2";
    } else {
        r.tor_status = check_tor(Emin, input.p, deep);
    }

    // informational conditions
    {
        const auto& inv = Emin.invariants();
        bool mult_at_p = false;
        int ord_p_delta = 0;
        for (const auto& d : r.local_data)
            if (d.prime == input.p) {
                mult_at_p = d.type == ReductionType::SplitMultiplicative ||
                            d.type == ReductionType::NonsplitMultiplicative;
                ord_p_delta = static_cast<int>(d.ord_delta);
            }
        r.red_p.holds = mult_at_p;
        r.red_p.detail = mult_at_p ? "multiplicative reduction at p" : "reduction at p is not multiplicative";

        r.disc.holds = (Int(ord_p_delta) % input.p != 0);
        r.disc.detail = "ord_p(Delta) = " + std::to_string(ord_p_delta);

        r.red_l.holds = true;
        std::ostringstream detail;
        for (const auto& d : r.local_data) {
            if (d.prime == input.p)
                continue;
            bool ok = d.type == ReductionType::SplitMultiplicative ||
                      d.type == ReductionType::NonsplitMultiplicative;
            if (d.type == ReductionType::Additive) {
                // potentially good iff j is integral at l
                ok = inv.j == 0 || ord_p(inv.j, d.prime) >= 0;
            }
            if (!ok) {
                r.red_l.holds = false;
                detail << (detail.tellp() > 0 ? ", " : "") << "l=" << d.prime;
            }
        }
        r.red_l.detail = r.red_l.holds ? "multiplicative or potentially good away from p"
                                       : "fails at " + detail.str();
    }

    // nu table and the exponent bound
    for (const auto& d : r.local_data)
        if (d.prime != input.p)
            r.nu_table.emplace_back(d.prime, nu_l(d, input.p, input.n));
    BoundInput min_input = input;
    min_input.curve = Emin;
    r.exponent_bound = bound_exponent(min_input, r.local_data);
    r.exponent_bound_clamped = std::max(0L, r.exponent_bound);

    r.certified = input.p > 3 && r.full_status.proven() && r.tor_status.holds();
    if (input.p == 3 && r.refusal_reason.empty())
        r.refusal_reason = "p = 3: the mod-3 image certificate is unavailable; bound shown with caveat";
    return r;
}

namespace {

std::string tor_text(const TorsionVerdict& v) {
    switch (v.kind) {
    case TorsionVerdict::Kind::Holds:
        return "holds (" + provenance_tag(v.provenance) + ")";
    case TorsionVerdict::Kind::Fails:
        return "fails (" + provenance_tag(v.provenance) +
               (v.witness ? ", witness " + v.witness->to_string() : "") + ")";
    case TorsionVerdict::Kind::Unknown:
        return "unknown (" + v.reason + ")";
    }
    return "?";
}

nlohmann::ordered_json json_int(const Int& v) {
    static const Int max_safe = (Int(1) << 53) - 1;
    if (abs(v) <= max_safe)
        return v.get_si();
    return v.get_str();
}

} // namespace

std::string render_text(const BoundReport& r) {
    std::ostringstream os;
    os << "curve " << r.input.curve.display();
    if (!(r.minimal_curve == r.input.curve))
        os << " (minimal model " << r.minimal_curve.display() << ")";
    os << "\n";
    os << "p = " << r.input.p << "  n = " << r.input.n << "  rank = " << r.input.rank << "\n";
    os << "local data:\n";
    for (const auto& d : r.local_data)
        os << "  " << report_line(d) << "\n";
    os << "(Full)  " << (r.full_status.proven() ? "proven" : "inconclusive") << "\n";
    os << "(Tor)   " << tor_text(r.tor_status) << "\n";
    os << "(Red_l) " << (r.red_l.holds ? "holds" : "fails") << ": " << r.red_l.detail << "\n";
    os << "(Red_p) " << (r.red_p.holds ? "holds" : "fails") << ": " << r.red_p.detail << "\n";
    os << "(Disc)  " << (r.disc.holds ? "holds" : "fails") << ": " << r.disc.detail << "\n";
    os << "nu:";
    if (r.nu_table.empty())
        os << " (no primes l != p divide Delta)";
    for (const auto& [l, nu] : r.nu_table)
        os << " nu_" << l << "=" << nu;
    os << "\n";
    os << "exponent bound: 2n(r-1) - 2*sum nu_l = " << r.exponent_bound
       << "  (clamped: " << r.exponent_bound_clamped << ")\n";
    if (r.certified) {
        os << "certified: #Cl_p(Q(E[p^n])) >= p^" << r.exponent_bound_clamped << "\n";
    } else {
        os << "NOT certified";
        if (!r.refusal_reason.empty())
            os << ": " << r.refusal_reason;
        os << "\n";
    }
    if (r.p3_caveat)
        os << "caveat: p = 3 bounds use the additive c_l = 3 case and carry no (Full) certificate\n";
    return os.str();
}

nlohmann::ordered_json render_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["curve"] = r.input.curve.display();
    j["minimal_curve"] = r.minimal_curve.display();
    j["p"] = json_int(r.input.p);
    j["n"] = r.input.n;
    j["rank"] = r.input.rank;
    nlohmann::ordered_json cond;
    cond["full"] = r.full_status.proven() ? "proven" : "inconclusive";
    cond["tor"] = r.tor_status.holds() ? "holds" : (r.tor_status.fails() ? "fails" : "unknown");
    cond["red_l"] = r.red_l.holds;
    cond["red_p"] = r.red_p.holds;
    cond["disc"] = r.disc.holds;
    j["conditions"] = cond;
    nlohmann::ordered_json nu = nlohmann::ordered_json::object();
    for (const auto& [l, v] : r.nu_table)
        nu[l.get_str()] = v;
    j["nu"] = nu;
    j["bound_raw"] = r.exponent_bound;
    j["bound_clamped"] = r.exponent_bound_clamped;
    j["certified"] = r.certified;
    if (r.p3_caveat)
        j["caveat"] = "p = 3 bounds use the additive c_l = 3 case and carry no (Full) certificate";
    if (!r.refusal_reason.empty())
        j["refusal"] = r.refusal_reason;
    return j;
}

} // namespace kappa
