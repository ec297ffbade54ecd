/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/modmath.hpp"

#include "hierkey/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace hierkey {

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

Modulus::Modulus(std::uint64_t p) : p_(p)
{
    if (p < 3 || p > (std::numeric_limits<std::uint64_t>::max() >> 1) || !is_prime(p)) {
        throw Error(Errc::InvalidParameter, "modulus " + std::to_string(p) + " is not an odd prime");
    }
}

std::uint64_t Modulus::reduce_signed(std::int64_t v) const noexcept
{
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    return static_cast<std::uint64_t>(r < 0 ? r + p : r);
}

std::uint64_t Modulus::pow(std::uint64_t base, std::uint64_t exp) const noexcept
{
    std::uint64_t result = 1 % p_;
    base %= p_;
    while (exp != 0) {
        if (exp & 1) {
            result = mul(result, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

std::uint64_t Modulus::inv(std::uint64_t a) const
{
    a %= p_;
    if (a == 0) {
        throw Error(Errc::NotInvertible, "0 has no inverse mod " + std::to_string(p_));
    }
    // extended Euclid on signed 128-bit to avoid overflow near 2^63
    __int128 old_r = a, r = p_, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) {
        throw Error(Errc::NotInvertible, std::to_string(a) + " is not a unit mod " + std::to_string(p_));
    }
    __int128 res = old_s % static_cast<__int128>(p_);
    if (res < 0) {
        res += p_;
    }
    return static_cast<std::uint64_t>(res);
}

namespace {

void require_same(const Modulus& a, const Modulus& b)
{
    if (!(a == b)) {
        throw Error(Errc::ModulusMismatch,
                    "operands over p=" + std::to_string(a.value()) + " and p=" + std::to_string(b.value()));
    }
}

} // namespace

Fp operator+(const Fp& a, const Fp& b)
{
    require_same(a.m_, b.m_);
    return Fp(a.m_, a.m_.add(a.v_, b.v_));
}

Fp operator-(const Fp& a, const Fp& b)
{
    require_same(a.m_, b.m_);
    return Fp(a.m_, a.m_.sub(a.v_, b.v_));
}

Fp operator*(const Fp& a, const Fp& b)
{
    require_same(a.m_, b.m_);
    return Fp(a.m_, a.m_.mul(a.v_, b.v_));
}

Fp mod_inv(const Fp& a)
{
    return Fp(a.modulus(), a.modulus().inv(a.value()));
}

Poly::Poly(Modulus m, std::vector<std::uint64_t> ascending) : m_(m), c_(std::move(ascending))
{
    for (auto& c : c_) {
        c = m_.reduce(c);
    }
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Poly poly_from_roots(std::span<const Fp> roots, const Fp& mask)
{
    const Modulus m = mask.modulus();
    std::vector<std::uint64_t> seen;
    seen.reserve(roots.size());
    for (const auto& r : roots) {
        require_same(m, r.modulus());
        seen.push_back(r.value());
    }
    std::sort(seen.begin(), seen.end());
    if (auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end()) {
        throw Error(Errc::DuplicateRoot, "root " + std::to_string(*dup) + " appears twice");
    }

    Poly f = Poly::constant(m, 1);
    for (const auto& r : roots) {
        f = poly_mul_linear(f, r);
    }
    return poly_add_constant(f, mask);
}

Fp poly_eval(const Poly& f, const Fp& x)
{
    require_same(f.modulus(), x.modulus());
    const Modulus& m = f.modulus();
    const auto c = f.coefficients();
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = m.add(m.mul(acc, x.value()), *it);
    }
    return Fp(m, acc);
}

Poly poly_mul_linear(const Poly& f, const Fp& r)
{
    require_same(f.modulus(), r.modulus());
    const Modulus& m = f.modulus();
    const auto c = f.coefficients();
    if (c.empty()) {
        return f;
    }
    // new_j = old_{j-1} - r * old_j
    std::vector<std::uint64_t> out(c.size() + 1, 0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::uint64_t lower = j > 0 ? c[j - 1] : 0;
        const std::uint64_t same = j < c.size() ? m.mul(r.value(), c[j]) : 0;
        out[j] = m.sub(lower, same);
    }
    return Poly(m, std::move(out));
}

LinearDivision poly_div_linear(const Poly& f, const Fp& r)
{
    require_same(f.modulus(), r.modulus());
    if (f.degree() < 1) {
        throw Error(Errc::DegreeTooLow, "synthetic division needs degree >= 1");
    }
    const Modulus& m = f.modulus();
    const auto c = f.coefficients();
    const std::size_t n = c.size() - 1;
    // q_{n-1} = c_n, q_{j-1} = c_j + r * q_j, remainder = c_0 + r * q_0
    std::vector<std::uint64_t> q(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t j = n; j >= 1; --j) {
        carry = m.add(c[j], m.mul(r.value(), carry));
        q[j - 1] = carry;
    }
    const std::uint64_t rem = m.add(c[0], m.mul(r.value(), carry));
    return LinearDivision{Poly(m, std::move(q)), Fp(m, rem)};
}

Poly poly_sub(const Poly& f, const Poly& g)
{
    require_same(f.modulus(), g.modulus());
    const Modulus& m = f.modulus();
    const auto a = f.coefficients();
    const auto b = g.coefficients();
    std::vector<std::uint64_t> out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = m.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    }
    return Poly(m, std::move(out));
}

Poly poly_add_constant(const Poly& f, const Fp& c)
{
    require_same(f.modulus(), c.modulus());
    std::vector<std::uint64_t> out(f.coefficients().begin(), f.coefficients().end());
    if (out.empty()) {
        out.push_back(0);
    }
    out[0] = f.modulus().add(out[0], c.value());
    return Poly(f.modulus(), std::move(out));
}

RootScan find_roots(const Poly& f, std::uint64_t budget)
{
    const Modulus& m = f.modulus();
    const std::uint64_t p = m.value();
    if (p > budget) {
        throw Error(Errc::ScanBudgetExceeded,
                    "p=" + std::to_string(p) + " exceeds scan budget " + std::to_string(budget));
    }
    RootScan scan;
    if (f.is_zero()) {
        scan.degenerate = true;
        return scan;
    }
    const auto d = static_cast<std::size_t>(f.degree());
    if (d == 0) {
        return scan;
    }

    // Forward differences: diff[k] = Δ^k f(x). Δ^d f is constant, so each
    // step costs d modular additions.
    std::vector<std::uint64_t> diff(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        diff[k] = poly_eval(f, Fp(m, k)).value();
    }
    for (std::size_t level = 1; level <= d; ++level) {
        for (std::size_t k = d; k >= level; --k) {
            diff[k] = m.sub(diff[k], diff[k - 1]);
        }
    }
    // diff now holds Δ^k f(0) at index k.
    for (std::uint64_t x = 0; x < p; ++x) {
        if (diff[0] == 0) {
            scan.roots.push_back(x);
        }
        for (std::size_t k = 0; k < d; ++k) {
            diff[k] = m.add(diff[k], diff[k + 1]);
        }
    }
    return scan;
}

} // namespace hierkey
