// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/local_torsion.hpp"

#include <atomic>
#include <cassert>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kappa/divpoly.hpp"
#include "kappa/frobenius.hpp"

namespace kappa {

namespace {

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

Int pow_int(const Int& base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

} // namespace

std::string provenance_tag(TorProvenance p) {
    switch (p) {
    case TorProvenance::TraceCriterion:
        return "trace-criterion";
    case TorProvenance::LiftTest:
        return "lift-test";
    case TorProvenance::Lemma22:
        return "lemma-2.2";
    case TorProvenance::Lemma23Nonsplit:
        return "lemma-2.3-nonsplit";
    case TorProvenance::Lemma23Disc:
        return "lemma-2.3-disc";
    case TorProvenance::TateParameter:
        return "tate-parameter";
    case TorProvenance::CmCriterion:
        return "cm-criterion";
    case TorProvenance::P2Remark:
        return "p2-remark";
    case TorProvenance::BruteForceOracle:
        return "brute-force-oracle";
    }
    return "?";
}

std::string TorWitness::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::PointModP2:
        os << "(" << x << "," << y << ") mod " << modulus;
        break;
    case Kind::RationalPoint:
        os << "(" << x << "," << y << ")";
        break;
    case Kind::TateUnit:
        os << "unit=" << x;
        if (modulus != 0)
            os << " mod " << modulus;
        break;
    case Kind::XResidue:
        os << "x=" << x << " mod " << modulus;
        break;
    }
    return os.str();
}

TorsionVerdict TorsionVerdict::make_holds(TorProvenance p) {
    TorsionVerdict v;
    v.kind = Kind::Holds;
    v.provenance = p;
    return v;
}

TorsionVerdict TorsionVerdict::make_fails(TorProvenance p, TorWitness w) {
    TorsionVerdict v;
    v.kind = Kind::Fails;
    v.provenance = p;
    v.witness = std::move(w);
    return v;
}

TorsionVerdict TorsionVerdict::make_unknown(std::string reason) {
    TorsionVerdict v;
    v.kind = Kind::Unknown;
    v.reason = std::move(reason);
    return v;
}

// ---------------------------------------------------------------------------
// CompleteGroupLaw

CompleteGroupLaw::CompleteGroupLaw(const WeierstrassCurve& E, const Int& p) {
    if (p < 5 || !is_prime(p))
        throw PreconditionViolatedError("CompleteGroupLaw: needs a prime p >= 5");
    const auto& inv = E.invariants();
    if (inv.disc % p == 0)
        throw PreconditionViolatedError("CompleteGroupLaw: bad reduction at " + p.get_str());
    p_ = p;
    m_ = p * p;
    a_ = mod(-27 * inv.c4, m_);
    b_ = mod(-54 * inv.c6, m_);
    b3_ = mod(3 * b_, m_);
    a1_ = mod(E.a1(), m_);
    a3_ = mod(E.a3(), m_);
    b2_ = mod(inv.b2, m_);
}

Int CompleteGroupLaw::red(const Int& v) const {
    return mod(v, m_);
}

ProjectivePoint CompleteGroupLaw::embed_affine(const Int& x, const Int& y) const {
    ProjectivePoint P;
    P.X = red(36 * x + 3 * b2_);
    P.Y = red(108 * (2 * y + a1_ * x + a3_));
    P.Z = 1;
    return P;
}

bool CompleteGroupLaw::on_curve(const ProjectivePoint& P) const {
    Int lhs = P.Y * P.Y % m_ * P.Z;
    Int rhs = P.X * P.X % m_ * P.X + a_ * P.X % m_ * (P.Z * P.Z % m_) + b_ * (P.Z * P.Z % m_ * P.Z % m_);
    return red(lhs - rhs) == 0;
}

ProjectivePoint CompleteGroupLaw::negate(const ProjectivePoint& P) const {
    return {P.X, red(-P.Y), P.Z};
}

ProjectivePoint CompleteGroupLaw::add(const ProjectivePoint& P, const ProjectivePoint& Q) const {
    const Int t0 = red(P.X * Q.Y + Q.X * P.Y);
    const Int t1 = red(P.Y * Q.Y);
    const Int t2 = red(P.X * Q.Z + Q.X * P.Z);
    const Int t3 = red(P.Y * Q.Z + Q.Y * P.Z);
    const Int t4 = red(P.X * Q.X);
    const Int t5 = red(P.Z * Q.Z);

    const Int A = red(t1 - a_ * t2 - b3_ * t5);
    const Int B = red(t1 + a_ * t2 + b3_ * t5);
    const Int C = red(a_ * t4 + b3_ * t2 - a_ * a_ % m_ * t5);
    const Int D = red(3 * t4 + a_ * t5);

    ProjectivePoint R;
    R.X = red(t0 * A - t3 * C);
    R.Y = red(D * C + B * A);
    R.Z = red(t3 * B + t0 * D);
    // the law is complete on points whose reductions lie in a group of odd
    // order; a non-primitive output means that contract was broken
    if (R.X % p_ == 0 && R.Y % p_ == 0 && R.Z % p_ == 0)
        throw Error("CompleteGroupLaw::add: exceptional pair (order-2 difference in the reduction)");
    return R;
}

ProjectivePoint CompleteGroupLaw::mul(const Int& k, const ProjectivePoint& P) const {
    Int n = k;
    ProjectivePoint base = P;
    if (n < 0) {
        n = -n;
        base = negate(base);
    }
    ProjectivePoint R = identity();
    while (n > 0) {
        if (n % 2 == 1)
            R = add(R, base);
        base = add(base, base);
        n /= 2;
    }
    return R;
}

bool CompleteGroupLaw::is_identity(const ProjectivePoint& P) const {
    return red(P.X) == 0 && red(P.Z) == 0;
}

// ---------------------------------------------------------------------------
// order-p lift test

TorsionVerdict order_p_lift_test(const WeierstrassCurve& E_min, const Int& p,
                                 std::optional<unsigned long> seed) {
    if (p < 5 || !is_prime(p))
        throw PreconditionViolatedError("order_p_lift_test: needs a prime p >= 5");
    const auto& inv = E_min.invariants();
    if (inv.disc % p == 0)
        throw PreconditionViolatedError("order_p_lift_test: bad reduction at " + p.get_str());
    FrobeniusData fr = trace_of_frobenius(E_min, p);
    if (fr.count % p != 0)
        throw PreconditionViolatedError("order_p_lift_test: E~(F_p) has no p-torsion");
    // Hasse leaves only #E~ = p (a_p = 1, any p >= 5) and #E~ = 2p (a_5 = -4)
    const bool doubled = fr.count == 2 * p;
    assert(fr.count == p || doubled);

    const Int b2 = inv.b2, b4 = inv.b4, b6 = inv.b6;
    auto gx = [&](const Int& x) { return mod(((4 * x + b2) * x + 2 * b4) * x + b6, p); };

    std::optional<unsigned long> rng_state = seed;
    auto next_x = [&](long step) -> Int {
        if (!rng_state)
            return Int(step) % p; // deterministic: ascending x
        unsigned long s = *rng_state;
        s = s * 6364136223846793005UL + 1442695040888963407UL;
        rng_state = s;
        return Int(s >> 16) % p;
    };

    const Int m = p * p;
    CompleteGroupLaw grp(E_min, p);

    auto F = [&](const Int& xx, const Int& yy) {
        return mod(yy * yy + E_min.a1() * xx * yy + E_min.a3() * yy -
                       (((xx + E_min.a2()) * xx + E_min.a4()) * xx + E_min.a6()),
                   m);
    };

    for (long step = 0; step < 4 * 64 + p.get_si(); ++step) {
        Int cand = next_x(step);
        Int w = gx(cand);
        if (w == 0 || legendre_symbol(w, p) != 1)
            continue; // skip 2-torsion x-coordinates and non-residues
        Int Y0 = sqrt_mod_prime(w, p);
        Int x = cand;
        Int y = mod((Y0 - E_min.a1() * x - E_min.a3()) * inv_mod(2, p), p);

        // lift to Z/p^2; randomized runs also shift x by a random multiple of p
        if (rng_state)
            x = mod(x + p * (Int(*rng_state) % p), m);
        Int Fy = mod(2 * y + E_min.a1() * x + E_min.a3(), p);
        Int xhat = x, yhat = y;
        if (Fy != 0) {
            Int slope = mod(2 * y + E_min.a1() * x + E_min.a3(), m);
            yhat = mod(y - F(x, y) * inv_mod(slope, m), m);
        } else {
            // nonsingularity guarantees the x-partial is a unit here
            Int slope = mod(E_min.a1() * y - 3 * x * x - 2 * E_min.a2() * x - E_min.a4(), m);
            xhat = mod(x - F(x, y) * inv_mod(slope, m), m);
        }
        assert(F(xhat, yhat) == 0);

        ProjectivePoint P = grp.embed_affine(xhat, yhat);
        assert(grp.on_curve(P));
        // project onto the p-part: for #E~ = 2p double once (safe: P - P is
        // never of order 2); retry if the reduction dies
        if (doubled) {
            P = grp.add(P, P);
            if (P.Z % p == 0 && P.X % p == 0)
                continue; // the chosen point sat in the prime-to-p part
        }
        ProjectivePoint Q = grp.mul(p, P);
        if (!grp.is_identity(Q) && !grp.is_identity(grp.mul(p, Q)))
            throw Error("order_p_lift_test: group law self-check failed ([p^2]P != O)");

        if (grp.is_identity(Q)) {
            // witness in the original affine coordinates mod p^2
            Int zinv = inv_mod(P.Z, m);
            Int Xa = mod(P.X * zinv, m), Ya = mod(P.Y * zinv, m);
            Int wx = mod((Xa - 3 * inv.b2) * inv_mod(Int(36), m), m);
            Int wy = mod((Ya * inv_mod(Int(108), m) - E_min.a1() * wx - E_min.a3()) * inv_mod(2, m), m);
            assert(F(wx, wy) == 0);
            TorWitness wit;
            wit.kind = TorWitness::Kind::PointModP2;
            wit.x = wx;
            wit.y = wy;
            wit.modulus = m;
            wit.note = "order-p lift of a generator of the p-part of the reduction";
            return TorsionVerdict::make_fails(TorProvenance::LiftTest, std::move(wit));
        }
        return TorsionVerdict::make_holds(TorProvenance::LiftTest);
    }
    throw Error("order_p_lift_test: failed to find a point in the p-part");
}

// ---------------------------------------------------------------------------
// Tate parameter test

TorsionVerdict tate_parameter_test(const Rat& j, const Int& p, long ord_delta) {
    if (p < 3 || !is_prime(p))
        throw Error("tate_parameter_test: p must be an odd prime");
    if (ord_delta <= 0 || ord_delta % p != 0)
        throw PreconditionViolatedError("tate_parameter_test: requires p | ord_delta > 0");
    if (j == 0 || ord_p(j, p) != -ord_delta)
        throw PreconditionViolatedError("tate_parameter_test: ord_p(j) must equal -ord_delta");

    // ord_p(q) = ord_delta >= p > 2, so unit(q) = unit(1/j) mod p^2
    Rat w = Rat(1) / j;
    TruncatedPadic q = TruncatedPadic::from_rational(w, p, static_cast<unsigned>(ord_delta) + 2);
    assert(q.valuation() == static_cast<unsigned>(ord_delta));
    Int u = mod(q.unit_part(), p * p);

    if (unit_is_pth_power(u, p)) {
        TorWitness wit;
        wit.kind = TorWitness::Kind::TateUnit;
        wit.x = u;
        wit.modulus = p * p;
        wit.note = "Tate parameter is a p-th power: p | ord(q) and unit(q)^(p-1) = 1 mod p^2";
        return TorsionVerdict::make_fails(TorProvenance::TateParameter, std::move(wit));
    }
    return TorsionVerdict::make_holds(TorProvenance::TateParameter);
}

// ---------------------------------------------------------------------------
// away-from-p exclusion

TorsionVerdict check_torsion_away(const WeierstrassCurve& E_min, const Int& l, const Int& p) {
    if (l == p)
        throw SamePrimeError("check_torsion_away: l and p must differ");
    LocalReductionData data = tate_local_data(E_min, l);
    if (data.type != ReductionType::Additive)
        return TorsionVerdict::make_unknown("outside Lemma 2.2 scope: reduction at l is not additive");
    if (p == 2)
        return TorsionVerdict::make_unknown("p = 2: the additive-reduction exclusion requires p > 2");
    if (p > 3 || data.tamagawa != 3)
        return TorsionVerdict::make_holds(TorProvenance::Lemma22);
    return TorsionVerdict::make_unknown("p = 3 with c_l = 3: Lemma 2.2 does not apply");
}

// ---------------------------------------------------------------------------
// brute-force division polynomial decider (small p)

namespace {

TorsionVerdict brute_force_padic_torsion(const WeierstrassCurve& E, const Int& p) {
    IntegerPolynomial f = division_polynomial(E, static_cast<unsigned>(p.get_ui()));
    IntegerPolynomial g = two_torsion_polynomial(E);

    for (unsigned precision : {6u, 10u, 16u, 24u}) {
        std::vector<Int> roots;
        try {
            roots = lift_roots_padic(f, p, precision);
        } catch (const PrecisionExhaustedError&) {
            return TorsionVerdict::make_unknown("p-adic root search budget exhausted");
        }
        bool ambiguous = false;
        for (const Int& r : roots) {
            Int pn = pow_int(p, precision);
            Int w = g.eval_mod(r, pn);
            if (w == 0) {
                ambiguous = true;
                continue;
            }
            int v = ord_p(w, p);
            if (static_cast<unsigned>(v) >= precision) {
                ambiguous = true;
                continue;
            }
            if (v % 2 != 0)
                continue; // y would need fractional valuation
            Int unit = w / pow_int(p, static_cast<unsigned>(v));
            if (legendre_symbol(unit, p) == 1) {
                TorWitness wit;
                wit.kind = TorWitness::Kind::XResidue;
                wit.x = r;
                wit.modulus = pn;
                wit.note = "root of the p-division polynomial in Z_p with square psi2^2(x)";
                return TorsionVerdict::make_fails(TorProvenance::BruteForceOracle, std::move(wit));
            }
        }
        if (!ambiguous)
            return TorsionVerdict::make_holds(TorProvenance::BruteForceOracle);
    }
    return TorsionVerdict::make_unknown("could not resolve y-solvability at available precision");
}

} // namespace

// ---------------------------------------------------------------------------
// dispatch

TorsionVerdict check_tor(const WeierstrassCurve& E_min, const Int& p, bool deep) {
    if (!is_prime(p))
        throw Error("check_tor: p must be prime");
    LocalReductionData data = tate_local_data(E_min, p);

    if (p == 2) {
        if (data.type == ReductionType::SplitMultiplicative ||
            data.type == ReductionType::NonsplitMultiplicative) {
            TorWitness w;
            w.kind = TorWitness::Kind::TateUnit;
            w.x = -1;
            w.modulus = 0;
            w.note = "-1 gives a 2-torsion class in the Tate uniformization";
            return TorsionVerdict::make_fails(TorProvenance::P2Remark, std::move(w));
        }
        return TorsionVerdict::make_unknown("p = 2: only the multiplicative case is covered");
    }

    switch (data.type) {
    case ReductionType::Good: {
        FrobeniusData fr = trace_of_frobenius(E_min, p);
        if (p == 3) {
            if (fr.count % 3 != 0)
                return TorsionVerdict::make_holds(TorProvenance::TraceCriterion);
            return brute_force_padic_torsion(E_min, p);
        }
        // E~(F_p)[p] = 0 iff p does not divide the count; at p = 5 this
        // covers the a_5 = -4 case the bare a_p != 1 test would miss
        if (fr.count % p != 0)
            return TorsionVerdict::make_holds(TorProvenance::TraceCriterion);
        TorsionVerdict lifted = order_p_lift_test(E_min, p);
        if (p >= 7 && is_cm_j(E_min.invariants().j) && lifted.fails()) {
            lifted.provenance = TorProvenance::CmCriterion;
            lifted.witness->note = "CM with a_p = 1: torsion lifts; witness from the lift test";
        }
        return lifted;
    }
    case ReductionType::NonsplitMultiplicative:
        return TorsionVerdict::make_holds(TorProvenance::Lemma23Nonsplit);
    case ReductionType::SplitMultiplicative: {
        if (data.ord_delta % p != 0)
            return TorsionVerdict::make_holds(TorProvenance::Lemma23Disc);
        if (!deep)
            return TorsionVerdict::make_unknown("p | ord_p(Delta), deep test disabled");
        return tate_parameter_test(E_min.invariants().j, p, data.ord_delta);
    }
    case ReductionType::Additive: {
        if (deep && p <= 13)
            return brute_force_padic_torsion(E_min, p);
        if (deep)
            return TorsionVerdict::make_unknown("additive at p: brute force gated to p <= 13");
        return TorsionVerdict::make_unknown("additive reduction at p admits no shallow exclusion");
    }
    }
    return TorsionVerdict::make_unknown("unreachable");
}

// ---------------------------------------------------------------------------
// prime-range scan

std::vector<ScanHit> scan_local_torsion(const WeierstrassCurve& E_min, const Int& p_min,
                                        const Int& p_max, bool deep, unsigned jobs) {
    if (p_min < 3)
        throw Error("scan_local_torsion: p_min must be >= 3");

    std::vector<Int> primes;
    for (Int p = next_prime(p_min - 1); p <= p_max; p = next_prime(p))
        primes.push_back(p);

    std::vector<std::optional<TorsionVerdict>> verdicts(primes.size());
    unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));
    if (workers <= 1) {
        for (size_t i = 0; i < primes.size(); ++i)
            verdicts[i] = check_tor(E_min, primes[i], deep);
    } else {
        cm_j_invariants(); // warm the shared table before spawning
        std::atomic<size_t> cursor{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = cursor.fetch_add(1);
                    if (i >= primes.size())
                        return;
                    verdicts[i] = check_tor(E_min, primes[i], deep);
                }
            });
        for (auto& th : pool)
            th.join();
    }

    std::vector<ScanHit> hits;
    for (size_t i = 0; i < primes.size(); ++i)
        if (!verdicts[i]->holds())
            hits.push_back({primes[i], *verdicts[i]});
    return hits;
}

std::string scan_line(const ScanHit& hit) {
    std::ostringstream os;
    os << "p=" << hit.p << " verdict=" << (hit.verdict.fails() ? "fails" : "unknown");
    os << " provenance=" << (hit.verdict.unknown() ? "-" : provenance_tag(hit.verdict.provenance));
    os << " witness=" << (hit.verdict.witness ? hit.verdict.witness->to_string() : "-");
    if (hit.verdict.unknown())
        os << " reason=\"" << hit.verdict.reason << "\"";
    return os.str();
}

// ---------------------------------------------------------------------------
// CM j-invariants

const std::vector<Int>& cm_j_invariants() {
    static const std::vector<Int> table = [] {
        std::ifstream in(std::string(KAPPA_DATA_DIR) + "/cm_j_invariants.json");
        if (!in)
            throw Error("cm_j_invariants: bundled data file not found");
        nlohmann::json doc = nlohmann::json::parse(in);
        std::vector<Int> js;
        for (const auto& e : doc.at("entries"))
            js.emplace_back(e.at("j").get<std::string>());
        if (js.size() != 13)
            throw Error("cm_j_invariants: expected 13 entries");
        return js;
    }();
    return table;
}

bool is_cm_j(const Rat& j) {
    if (j.get_den() != 1)
        return false;
    Int n = j.get_num();
    for (const Int& v : cm_j_invariants())
        if (v == n)
            return true;
    return false;
}

} // namespace kappa
