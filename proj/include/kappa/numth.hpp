// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_NUMTH_HPP
#define KAPPA_NUMTH_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "kappa/errors.hpp"

namespace kappa {

using Int = mpz_class;
using Rat = mpq_class;

// p-adic valuation of a nonzero integer; ord(0) is not defined here.
int ord_p(const Int& x, const Int& p);
int ord_p(const Rat& x, const Int& p);

bool is_prime(const Int& n);
Int next_prime(const Int& n);

// Distinct prime factors of |n| by trial division; a large probable-prime
// cofactor is accepted, a large composite one is an Error.
std::vector<Int> factor_integer(const Int& n);

// Legendre symbol (a/l) for an odd prime l, computed by Euler's criterion.
int legendre_symbol(const Int& a, const Int& l);

// Smaller of the two square roots of a mod l (Tonelli-Shanks for
// l = 1 mod 4, direct exponentiation for l = 3 mod 4).
Int sqrt_mod_prime(const Int& a, const Int& l);

// True iff the unit u of Z_p is a p-th power, read to precision 2:
// u^(p-1) = 1 (mod p^2).
bool unit_is_pth_power(const Int& u, const Int& p);

// Residue class modulo a fixed modulus >= 2.
class ResidueClass {
public:
    ResidueClass(Int value, Int modulus);

    const Int& value() const { return value_; }
    const Int& modulus() const { return modulus_; }

    ResidueClass add(const ResidueClass& o) const;
    ResidueClass sub(const ResidueClass& o) const;
    ResidueClass mul(const ResidueClass& o) const;
    ResidueClass neg() const;
    ResidueClass inverse() const;           // NotAUnitError if gcd(value, modulus) > 1
    ResidueClass pow(const Int& e) const;   // e >= 0

    bool operator==(const ResidueClass& o) const = default;

private:
    Int value_;
    Int modulus_;
};

// Residue class mod p^N tagged with the p-adic order of the element it
// truncates.  Zero is precision-saturated: valuation == precision.
class TruncatedPadic {
public:
    TruncatedPadic(const Int& value, Int prime, unsigned precision);

    // Requires ord_p(x) >= 0.
    static TruncatedPadic from_rational(const Rat& x, const Int& prime, unsigned precision);

    const Int& prime() const { return prime_; }
    unsigned precision() const { return precision_; }
    const Int& value() const { return value_; }
    unsigned valuation() const { return valuation_; }
    bool is_zero() const { return valuation_ == precision_; }

    // value / p^valuation, a unit mod p^(precision - valuation).
    Int unit_part() const;

    TruncatedPadic add(const TruncatedPadic& o) const;
    TruncatedPadic mul(const TruncatedPadic& o) const;

private:
    Int prime_;
    unsigned precision_;
    Int value_;          // 0 <= value < p^precision
    unsigned valuation_; // min(ord_p(value), precision)
};

// Integer polynomial, coefficients lowest degree first, no trailing zeros.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<Int> coeffs);
    static IntegerPolynomial x_power(unsigned k, const Int& c = 1);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    const Int& coeff(size_t k) const;
    const std::vector<Int>& coeffs() const { return coeffs_; }

    Int eval(const Int& x) const;
    Int eval_mod(const Int& x, const Int& m) const;
    IntegerPolynomial derivative() const;

    IntegerPolynomial operator+(const IntegerPolynomial& o) const;
    IntegerPolynomial operator-(const IntegerPolynomial& o) const;
    IntegerPolynomial operator*(const IntegerPolynomial& o) const;
    IntegerPolynomial operator*(const Int& c) const;

    bool operator==(const IntegerPolynomial& o) const = default;

    std::string to_string() const;

private:
    std::vector<Int> coeffs_;
    void trim();
};

// All residues r mod p^N such that some root of f in Z_p reduces to r.
// Branch-and-lift with Hensel certification; node_budget bounds the
// search tree (PrecisionExhaustedError beyond it).
std::vector<Int> lift_roots_padic(const IntegerPolynomial& f, const Int& p, unsigned precision,
                                  size_t node_budget = 1000000);

} // namespace kappa

#endif
