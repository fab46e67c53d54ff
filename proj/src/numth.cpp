// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/numth.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace kappa {

int ord_p(const Int& x, const Int& p) {
    if (x == 0)
        throw Error("ord_p: valuation of zero is undefined");
    Int rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

int ord_p(const Rat& x, const Int& p) {
    if (x == 0)
        throw Error("ord_p: valuation of zero is undefined");
    return ord_p(Int(x.get_num()), p) - ord_p(Int(x.get_den()), p);
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::vector<Int> factor_integer(const Int& n) {
    std::vector<Int> out;
    Int m = abs(n);
    if (m <= 1)
        return out;
    for (Int p : {Int(2), Int(3), Int(5)}) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0)
                m /= p;
        }
    }
    // wheel over 6k +- 1
    Int p = 7;
    int step = 4;
    while (p * p <= m && p < 10000000) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0)
                m /= p;
        }
        p += step;
        step = 6 - step;
    }
    if (m > 1) {
        if (!is_prime(m))
            throw Error("factor_integer: composite cofactor " + m.get_str() + " too large to factor");
        out.push_back(m);
    }
    return out;
}

int legendre_symbol(const Int& a, const Int& l) {
    if (l == 2 || !is_prime(l))
        throw Error("legendre_symbol: modulus must be an odd prime");
    Int r;
    Int e = (l - 1) / 2;
    Int base = a % l;
    if (base < 0)
        base += l;
    if (base == 0)
        return 0;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), l.get_mpz_t());
    if (r == 1)
        return 1;
    assert(r == l - 1);
    return -1;
}

Int sqrt_mod_prime(const Int& a, const Int& l) {
    int chi = legendre_symbol(a, l);
    if (chi == -1)
        throw NonResidueError("sqrt_mod_prime: not a quadratic residue");
    Int x = a % l;
    if (x < 0)
        x += l;
    if (chi == 0)
        return 0;

    Int r;
    if (l % 4 == 3) {
        Int e = (l + 1) / 4;
        mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), l.get_mpz_t());
    } else {
        // Tonelli-Shanks
        Int q = l - 1;
        unsigned s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        Int z = 2;
        while (legendre_symbol(z, l) != -1)
            ++z;
        Int c, t, m = s;
        mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), l.get_mpz_t());
        mpz_powm(t.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t(), l.get_mpz_t());
        Int e = (q + 1) / 2;
        mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), l.get_mpz_t());
        while (t != 1) {
            Int tt = t;
            Int i = 0;
            while (tt != 1) {
                tt = tt * tt % l;
                ++i;
            }
            Int b = c;
            for (Int j = 0; j < m - i - 1; ++j)
                b = b * b % l;
            r = r * b % l;
            c = b * b % l;
            t = t * c % l;
            m = i;
        }
    }
    Int other = l - r;
    return std::min(r, other);
}

bool unit_is_pth_power(const Int& u, const Int& p) {
    if (u % p == 0)
        throw NotAUnitError("unit_is_pth_power: argument is divisible by p");
    Int p2 = p * p;
    Int base = u % p2;
    if (base < 0)
        base += p2;
    Int e = p - 1, r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p2.get_mpz_t());
    return r == 1;
}

// ---------------------------------------------------------------------------
// ResidueClass

ResidueClass::ResidueClass(Int value, Int modulus) : value_(std::move(value)), modulus_(std::move(modulus)) {
    if (modulus_ < 2)
        throw Error("ResidueClass: modulus must be >= 2");
    value_ %= modulus_;
    if (value_ < 0)
        value_ += modulus_;
}

ResidueClass ResidueClass::add(const ResidueClass& o) const {
    assert(modulus_ == o.modulus_);
    return {value_ + o.value_, modulus_};
}

ResidueClass ResidueClass::sub(const ResidueClass& o) const {
    assert(modulus_ == o.modulus_);
    return {value_ - o.value_, modulus_};
}

ResidueClass ResidueClass::mul(const ResidueClass& o) const {
    assert(modulus_ == o.modulus_);
    return {value_ * o.value_, modulus_};
}

ResidueClass ResidueClass::neg() const {
    return {-value_, modulus_};
}

ResidueClass ResidueClass::inverse() const {
    Int r;
    if (mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t()) == 0)
        throw NotAUnitError("ResidueClass: value is not invertible mod " + modulus_.get_str());
    return {r, modulus_};
}

ResidueClass ResidueClass::pow(const Int& e) const {
    if (e < 0)
        return inverse().pow(-e);
    Int r;
    mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
    return {r, modulus_};
}

// ---------------------------------------------------------------------------
// TruncatedPadic

static Int pow_int(const Int& base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

TruncatedPadic::TruncatedPadic(const Int& value, Int prime, unsigned precision)
    : prime_(std::move(prime)), precision_(precision) {
    if (precision_ < 1)
        throw Error("TruncatedPadic: precision must be >= 1");
    Int pn = pow_int(prime_, precision_);
    value_ = value % pn;
    if (value_ < 0)
        value_ += pn;
    if (value_ == 0) {
        valuation_ = precision_;
    } else {
        valuation_ = static_cast<unsigned>(std::min<int>(ord_p(value_, prime_), static_cast<int>(precision_)));
    }
}

TruncatedPadic TruncatedPadic::from_rational(const Rat& x, const Int& prime, unsigned precision) {
    if (x == 0)
        return {Int(0), prime, precision};
    Int num = x.get_num();
    Int den = x.get_den();
    int v = ord_p(num, prime) - ord_p(den, prime);
    if (v < 0)
        throw Error("TruncatedPadic: negative valuation, not a p-adic integer");
    Int rest_num, rest_den;
    mpz_remove(rest_num.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t());
    mpz_remove(rest_den.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t());
    Int pn = pow_int(prime, precision);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), rest_den.get_mpz_t(), pn.get_mpz_t()) == 0)
        throw NotAUnitError("TruncatedPadic: denominator not invertible");
    Int value = rest_num % pn * inv % pn;
    if (static_cast<unsigned>(v) < precision)
        value = value * pow_int(prime, static_cast<unsigned>(v)) % pn;
    else
        value = 0;
    return {value, prime, precision};
}

Int TruncatedPadic::unit_part() const {
    if (is_zero())
        throw Error("TruncatedPadic: zero has no unit part");
    Int pv = pow_int(prime_, valuation_);
    return value_ / pv;
}

TruncatedPadic TruncatedPadic::add(const TruncatedPadic& o) const {
    assert(prime_ == o.prime_ && precision_ == o.precision_);
    return {value_ + o.value_, prime_, precision_};
}

TruncatedPadic TruncatedPadic::mul(const TruncatedPadic& o) const {
    assert(prime_ == o.prime_ && precision_ == o.precision_);
    return {value_ * o.value_, prime_, precision_};
}

// ---------------------------------------------------------------------------
// IntegerPolynomial

IntegerPolynomial::IntegerPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

IntegerPolynomial IntegerPolynomial::x_power(unsigned k, const Int& c) {
    std::vector<Int> v(k + 1, Int(0));
    v[k] = c;
    return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

const Int& IntegerPolynomial::coeff(size_t k) const {
    static const Int zero = 0;
    return k < coeffs_.size() ? coeffs_[k] : zero;
}

Int IntegerPolynomial::eval(const Int& x) const {
    Int r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * x + *it;
    return r;
}

Int IntegerPolynomial::eval_mod(const Int& x, const Int& m) const {
    Int r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = (r * x + *it) % m;
    if (r < 0)
        r += m;
    return r;
}

IntegerPolynomial IntegerPolynomial::derivative() const {
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Int> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return IntegerPolynomial(std::move(d));
}

IntegerPolynomial IntegerPolynomial::operator+(const IntegerPolynomial& o) const {
    std::vector<Int> r(std::max(coeffs_.size(), o.coeffs_.size()), Int(0));
    for (size_t k = 0; k < r.size(); ++k)
        r[k] = coeff(k) + o.coeff(k);
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::operator-(const IntegerPolynomial& o) const {
    std::vector<Int> r(std::max(coeffs_.size(), o.coeffs_.size()), Int(0));
    for (size_t k = 0; k < r.size(); ++k)
        r[k] = coeff(k) - o.coeff(k);
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::operator*(const IntegerPolynomial& o) const {
    if (is_zero() || o.is_zero())
        return {};
    std::vector<Int> r(coeffs_.size() + o.coeffs_.size() - 1, Int(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntegerPolynomial(std::move(r));
}

IntegerPolynomial IntegerPolynomial::operator*(const Int& c) const {
    std::vector<Int> r(coeffs_);
    for (auto& x : r)
        x *= c;
    return IntegerPolynomial(std::move(r));
}

std::string IntegerPolynomial::to_string() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    for (size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k] == 0)
            continue;
        if (os.tellp() > 0)
            os << (coeffs_[k] > 0 ? " + " : " - ");
        else if (coeffs_[k] < 0)
            os << "-";
        Int a = abs(coeffs_[k]);
        if (a != 1 || k == 0)
            os << a.get_str();
        if (k > 0)
            os << "x";
        if (k > 1)
            os << "^" << k;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// p-adic root lifting

namespace {

// Divide f by (x - r); remainder must vanish.
IntegerPolynomial deflate(const IntegerPolynomial& f, const Int& r) {
    const auto& c = f.coeffs();
    std::vector<Int> q(c.size() - 1, Int(0));
    Int carry = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = c[k] + carry * r;
    }
    assert(carry == 0);
    return IntegerPolynomial(std::move(q));
}

// Newton iteration from a Hensel-certified approximation down to the root's
// residue mod p^N.  vs = ord_p(f'(r)).
Int hensel_refine(const IntegerPolynomial& f, const IntegerPolynomial& fp, const Int& r, const Int& p,
                  unsigned target, unsigned vs) {
    unsigned work = target + 2 * vs + 4;
    Int pm = pow_int(p, work);
    Int pvs = pow_int(p, vs);
    Int x = r % pm;
    Int stop = pow_int(p, target + vs);
    for (int iter = 0; iter < 128; ++iter) {
        Int val = f.eval_mod(x, pm);
        if (val % stop == 0)
            break;
        Int slope = fp.eval_mod(x, pm);
        Int slope_unit = slope / pvs;
        Int inv;
        Int mod_small = pm / pvs;
        if (mpz_invert(inv.get_mpz_t(), slope_unit.get_mpz_t(), mod_small.get_mpz_t()) == 0)
            throw Error("hensel_refine: slope unit not invertible");
        Int delta = val / pvs % mod_small * inv % mod_small;
        x = (x - delta) % pm;
        if (x < 0)
            x += pm;
    }
    if (f.eval_mod(x, stop) != 0)
        throw Error("hensel_refine: Newton iteration failed to converge");
    return x % pow_int(p, target);
}

struct LiftNode {
    IntegerPolynomial poly;
    Int residue;
    unsigned level;
};

} // namespace

std::vector<Int> lift_roots_padic(const IntegerPolynomial& f, const Int& p, unsigned precision,
                                  size_t node_budget) {
    if (f.is_zero())
        throw Error("lift_roots_padic: zero polynomial");
    if (precision < 1)
        throw Error("lift_roots_padic: precision must be >= 1");

    const unsigned level_cap = precision + 96;
    std::set<Int> found;
    std::vector<LiftNode> stack;

    for (Int r = 0; r < p; ++r)
        if (f.eval_mod(r, p) == 0)
            stack.push_back({f, r, 1});

    size_t nodes = 0;
    while (!stack.empty()) {
        LiftNode node = std::move(stack.back());
        stack.pop_back();
        if (++nodes > node_budget)
            throw PrecisionExhaustedError("lift_roots_padic: node budget exceeded");

        IntegerPolynomial g = std::move(node.poly);
        Int val = g.eval(node.residue);
        while (val == 0) {
            // exact integer root: its truncation is the residue itself
            found.insert(node.residue % pow_int(p, precision));
            g = deflate(g, node.residue);
            val = g.eval(node.residue);
        }
        if (g.degree() < 1)
            continue;

        IntegerPolynomial gp = g.derivative();
        int vf = ord_p(val, p);
        Int slope = gp.eval(node.residue);
        int vs = slope == 0 ? -1 : ord_p(slope, p);

        if (vs >= 0 && vf > 2 * vs) {
            found.insert(hensel_refine(g, gp, node.residue, p, precision, static_cast<unsigned>(vs)));
            if (node.level > static_cast<unsigned>(vs))
                continue; // the class holds only this root
        }

        if (node.level >= level_cap)
            throw PrecisionExhaustedError("lift_roots_padic: branch failed to resolve");

        Int pk = pow_int(p, node.level);
        Int pk1 = pk * p;
        for (Int t = 0; t < p; ++t) {
            Int child = node.residue + t * pk;
            if (g.eval_mod(child, pk1) == 0)
                stack.push_back({g, child, node.level + 1});
        }
    }

    return {found.begin(), found.end()};
}

} // namespace kappa
