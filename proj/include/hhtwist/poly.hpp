#pragma once

// Dense univariate polynomial helpers over Q and F_p, coefficients stored
// in ascending order with no trailing zeros.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace hht::poly {

struct QOps {
    using C = mpq_class;
    C zero() const { return 0; }
    C one() const { return 1; }
    C from_int(long v) const { return v; }
    bool is_zero(const C& a) const { return sgn(a) == 0; }
    C add(const C& a, const C& b) const { return a + b; }
    C sub(const C& a, const C& b) const { return a - b; }
    C mul(const C& a, const C& b) const { return a * b; }
    C neg(const C& a) const { return -a; }
    C inv(const C& a) const {
        if (sgn(a) == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
};

struct FpOps {
    using C = std::int64_t;
    std::int64_t p;
    C zero() const { return 0; }
    C one() const { return 1 % p; }
    C from_int(long v) const {
        C r = v % p;
        return r < 0 ? r + p : r;
    }
    bool is_zero(C a) const { return a == 0; }
    C add(C a, C b) const {
        C r = a + b;
        return r >= p ? r - p : r;
    }
    C sub(C a, C b) const {
        C r = a - b;
        return r < 0 ? r + p : r;
    }
    C mul(C a, C b) const { return static_cast<C>((static_cast<__int128>(a) * b) % p); }
    C neg(C a) const { return a == 0 ? 0 : p - a; }
    C inv(C a) const {
        if (a == 0) throw std::domain_error("division by zero");
        // extended Euclid on (a, p)
        std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t k = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
            std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
        }
        return from_int(s0);
    }
};

template <class Ops>
using Poly = std::vector<typename Ops::C>;

template <class Ops>
void trim(const Ops& ops, Poly<Ops>& a) {
    while (!a.empty() && ops.is_zero(a.back())) a.pop_back();
}

template <class Ops>
Poly<Ops> add(const Ops& ops, const Poly<Ops>& a, const Poly<Ops>& b) {
    Poly<Ops> r(std::max(a.size(), b.size()), ops.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ops.add(r[i], b[i]);
    trim(ops, r);
    return r;
}

template <class Ops>
Poly<Ops> neg(const Ops& ops, const Poly<Ops>& a) {
    Poly<Ops> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ops.neg(a[i]);
    return r;
}

template <class Ops>
Poly<Ops> sub(const Ops& ops, const Poly<Ops>& a, const Poly<Ops>& b) {
    return add(ops, a, neg(ops, b));
}

template <class Ops>
Poly<Ops> mul(const Ops& ops, const Poly<Ops>& a, const Poly<Ops>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<Ops> r(a.size() + b.size() - 1, ops.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ops.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ops.add(r[i + j], ops.mul(a[i], b[j]));
    }
    trim(ops, r);
    return r;
}

template <class Ops>
Poly<Ops> scale(const Ops& ops, const Poly<Ops>& a, const typename Ops::C& c) {
    if (ops.is_zero(c)) return {};
    Poly<Ops> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ops.mul(a[i], c);
    trim(ops, r);
    return r;
}

/// Quotient and remainder; b must be nonzero.
template <class Ops>
std::pair<Poly<Ops>, Poly<Ops>> divmod(const Ops& ops, const Poly<Ops>& a, const Poly<Ops>& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly<Ops> rem = a;
    if (rem.size() < b.size()) return {{}, rem};
    Poly<Ops> quo(rem.size() - b.size() + 1, ops.zero());
    auto lead_inv = ops.inv(b.back());
    while (!rem.empty() && rem.size() >= b.size()) {
        std::size_t shift = rem.size() - b.size();
        auto c = ops.mul(rem.back(), lead_inv);
        quo[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] = ops.sub(rem[shift + j], ops.mul(c, b[j]));
        rem.pop_back();
        trim(ops, rem);
    }
    trim(ops, quo);
    return {quo, rem};
}

template <class Ops>
Poly<Ops> make_monic(const Ops& ops, const Poly<Ops>& a) {
    if (a.empty()) return a;
    return scale(ops, a, ops.inv(a.back()));
}

/// Monic gcd (zero if both inputs are zero).
template <class Ops>
Poly<Ops> gcd(const Ops& ops, Poly<Ops> a, Poly<Ops> b) {
    while (!b.empty()) {
        auto r = divmod(ops, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(ops, a);
}

/// Inverse of a modulo m, or nothing when gcd(a, m) != 1.
template <class Ops>
std::optional<Poly<Ops>> inverse_mod(const Ops& ops, const Poly<Ops>& a, const Poly<Ops>& m) {
    Poly<Ops> r0 = m, r1 = divmod(ops, a, m).second;
    Poly<Ops> s0, s1{ops.one()};
    while (!r1.empty()) {
        auto [k, r2] = divmod(ops, r0, r1);
        auto s2 = sub(ops, s0, mul(ops, k, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) return std::nullopt;
    return divmod(ops, scale(ops, s0, ops.inv(r0[0])), m).second;
}

/// Integer coefficients of the r-th cyclotomic polynomial.
std::vector<mpz_class> cyclotomic(int r);

/// Euler phi.
int euler_phi(int r);

bool is_prime(std::int64_t p);

/// Positive divisors of n in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);

}  // namespace hht::poly
