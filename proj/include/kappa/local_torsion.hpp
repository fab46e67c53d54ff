// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_LOCAL_TORSION_HPP
#define KAPPA_LOCAL_TORSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "kappa/local_reduction.hpp"
#include "kappa/weierstrass.hpp"

namespace kappa {

enum class TorProvenance {
    TraceCriterion,
    LiftTest,
    Lemma22,
    Lemma23Nonsplit,
    Lemma23Disc,
    TateParameter,
    CmCriterion,
    P2Remark,
    BruteForceOracle,
};

std::string provenance_tag(TorProvenance p);

struct TorWitness {
    enum class Kind { PointModP2, RationalPoint, TateUnit, XResidue };
    Kind kind = Kind::PointModP2;
    Int x = 0, y = 0;
    Int modulus = 0; // p^2 or p^N; 0 for rational points
    std::string note;

    std::string to_string() const;
};

// Certified three-valued outcome for E(Q_p)[p] = 0.
struct TorsionVerdict {
    enum class Kind { Holds, Fails, Unknown };
    Kind kind = Kind::Unknown;
    TorProvenance provenance = TorProvenance::TraceCriterion;
    std::optional<TorWitness> witness;
    std::string reason;

    bool holds() const { return kind == Kind::Holds; }
    bool fails() const { return kind == Kind::Fails; }
    bool unknown() const { return kind == Kind::Unknown; }

    static TorsionVerdict make_holds(TorProvenance p);
    static TorsionVerdict make_fails(TorProvenance p, TorWitness w);
    static TorsionVerdict make_unknown(std::string reason);
};

// ---------------------------------------------------------------------------
// Complete projective arithmetic on the short model over Z/p^2.
//
// E is carried to Y^2 Z = X^3 - 27 c4 X Z^2 - 54 c6 Z^3 by X = 36x + 3b2,
// Y = 108(2y + a1 x + a3); for p >= 5 this is a group isomorphism over the
// ring.  Addition uses a complete system valid on points whose reductions
// avoid order-2 differences, which holds throughout the anomalous case
// #E~(F_p) = p.

struct ProjectivePoint {
    Int X = 0, Y = 1, Z = 0;
};

class CompleteGroupLaw {
public:
    CompleteGroupLaw(const WeierstrassCurve& E, const Int& p);

    const Int& modulus() const { return m_; }

    ProjectivePoint identity() const { return {}; }
    ProjectivePoint embed_affine(const Int& x, const Int& y) const;
    ProjectivePoint add(const ProjectivePoint& P, const ProjectivePoint& Q) const;
    ProjectivePoint negate(const ProjectivePoint& P) const;
    ProjectivePoint mul(const Int& k, const ProjectivePoint& P) const;
    bool is_identity(const ProjectivePoint& P) const;
    bool on_curve(const ProjectivePoint& P) const;

private:
    Int p_;
    Int m_; // p^2
    Int a_, b_, b3_;
    Int a1_, a3_, b2_;
    Int red(const Int& v) const;
};

// ---------------------------------------------------------------------------

// Decides E(Q_p)[p] = 0 for good anomalous reduction (a_p = 1, p >= 5):
// lift any generator of E~(F_p) to the curve over Z/p^2 and test whether
// multiplication by p kills it.  The verdict does not depend on the choice
// of generator or lift; `seed` randomizes the choice for that property's
// tests, the default picks the smallest x.
TorsionVerdict order_p_lift_test(const WeierstrassCurve& E_min, const Int& p,
                                 std::optional<unsigned long> seed = std::nullopt);

// Split multiplicative reduction at p with p | ord_delta: decides whether
// the Tate parameter is a p-th power from j and ord_delta alone, reading
// unit(q) = unit(1/j) mod p^2.
TorsionVerdict tate_parameter_test(const Rat& j, const Int& p, long ord_delta);

// Torsion exclusion away from p (additive reduction at l with p > 3 or
// c_l != 3); everything else is Unknown.
TorsionVerdict check_torsion_away(const WeierstrassCurve& E_min, const Int& l, const Int& p);

// Full dispatch for condition (Tor) at p; never throws on odd primes,
// uncertainty comes back as Unknown.
TorsionVerdict check_tor(const WeierstrassCurve& E_min, const Int& p, bool deep = false);

struct ScanHit {
    Int p;
    TorsionVerdict verdict;
};

// All primes in [p_min, p_max] whose verdict is not Holds, ascending.
std::vector<ScanHit> scan_local_torsion(const WeierstrassCurve& E_min, const Int& p_min,
                                        const Int& p_max, bool deep = true, unsigned jobs = 1);

// "p=<p> verdict=<fails|unknown> provenance=<tag> witness=<coords or ->"
std::string scan_line(const ScanHit& hit);

// The thirteen rational CM j-invariants (class number one), from the
// bundled data file.
const std::vector<Int>& cm_j_invariants();
bool is_cm_j(const Rat& j);

} // namespace kappa

#endif
