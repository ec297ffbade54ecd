/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hierkey {

/// Exhaustive root scans are only attempted for p up to this bound.
inline constexpr std::uint64_t kRootScanBudget = std::uint64_t{1} << 22;

bool is_prime(std::uint64_t n) noexcept;

/// A validated odd prime modulus. Primality is checked once, by trial
/// division, when the modulus is constructed; arithmetic helpers assume
/// canonical operands in [0, p).
class Modulus {
public:
    explicit Modulus(std::uint64_t p);

    std::uint64_t value() const noexcept { return p_; }

    std::uint64_t reduce(std::uint64_t v) const noexcept { return v % p_; }
    std::uint64_t reduce_signed(std::int64_t v) const noexcept;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept
    {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept
    {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }
    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;
    /// Throws NotInvertible for a ≡ 0.
    std::uint64_t inv(std::uint64_t a) const;

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    std::uint64_t p_;
};

/// An element of Z_p in canonical form.
class Fp {
public:
    Fp(Modulus m, std::uint64_t v) : m_(m), v_(m.reduce(v)) {}

    std::uint64_t value() const noexcept { return v_; }
    const Modulus& modulus() const noexcept { return m_; }

    friend Fp operator+(const Fp& a, const Fp& b);
    friend Fp operator-(const Fp& a, const Fp& b);
    friend Fp operator*(const Fp& a, const Fp& b);
    Fp operator-() const { return Fp(m_, m_.neg(v_)); }
    friend bool operator==(const Fp&, const Fp&) = default;

private:
    Modulus m_;
    std::uint64_t v_;
};

Fp mod_inv(const Fp& a);

/// Univariate polynomial over Z_p, ascending coefficients, always trimmed so
/// the zero polynomial has no coefficients at all.
class Poly {
public:
    explicit Poly(Modulus m) : m_(m) {}
    Poly(Modulus m, std::vector<std::uint64_t> ascending);

    static Poly constant(Modulus m, std::uint64_t c) { return Poly(m, {c}); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    const Modulus& modulus() const noexcept { return m_; }
    std::span<const std::uint64_t> coefficients() const noexcept { return c_; }
    /// Coefficient of x^i; zero past the degree.
    Fp coeff(std::size_t i) const { return Fp(m_, i < c_.size() ? c_[i] : 0); }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();

    Modulus m_;
    std::vector<std::uint64_t> c_;
};

/// Π(x − r) + mask. Throws DuplicateRoot if two roots coincide.
Poly poly_from_roots(std::span<const Fp> roots, const Fp& mask);

/// Horner evaluation.
Fp poly_eval(const Poly& f, const Fp& x);

/// (x − r)·f
Poly poly_mul_linear(const Poly& f, const Fp& r);

struct LinearDivision {
    Poly quotient;
    Fp remainder;
};

/// Synthetic division f = (x − r)·quotient + remainder. deg f must be ≥ 1.
LinearDivision poly_div_linear(const Poly& f, const Fp& r);

Poly poly_sub(const Poly& f, const Poly& g);
Poly poly_add_constant(const Poly& f, const Fp& c);

struct RootScan {
    std::vector<std::uint64_t> roots; // ascending
    bool degenerate = false;          // set for the zero polynomial, which vanishes everywhere
};

/// Every x in [0, p) with f(x) = 0, found by exhaustive forward-difference
/// scanning. Throws ScanBudgetExceeded when p > budget.
RootScan find_roots(const Poly& f, std::uint64_t budget = kRootScanBudget);

} // namespace hierkey
