/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/error.hpp"
#include "hierkey/modmath.hpp"
#include "hierkey/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hierkey;

namespace {

std::vector<std::uint64_t> coeffs(const Poly& f)
{
    return {f.coefficients().begin(), f.coefficients().end()};
}

std::vector<Fp> as_fp(const Modulus& m, const std::vector<std::uint64_t>& v)
{
    std::vector<Fp> out;
    for (auto x : v) {
        out.emplace_back(m, x);
    }
    return out;
}

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::InvalidParameter;
}

} // namespace

TEST_CASE("modulus rejects composites and tiny values")
{
    CHECK(code_of([] { Modulus(1); }) == Errc::InvalidParameter);
    CHECK(code_of([] { Modulus(2); }) == Errc::InvalidParameter);
    CHECK(code_of([] { Modulus(99990); }) == Errc::InvalidParameter);
    CHECK_NOTHROW(Modulus(99991));
    CHECK_NOTHROW(Modulus(999983));
}

TEST_CASE("inverse agrees with linear search")
{
    for (std::uint64_t p : {3ull, 7ull, 23ull, 101ull, 239ull}) {
        const Modulus m(p);
        for (std::uint64_t a = 1; a < p; ++a) {
            CHECK(m.inv(a) == *oracle::inverse(a, p));
            CHECK(mod_inv(Fp(m, a)).value() == *oracle::inverse(a, p));
        }
        CHECK(code_of([&] { m.inv(0); }) == Errc::NotInvertible);
    }
}

TEST_CASE("field arithmetic")
{
    const Modulus m(23);
    const Fp a(m, 20), b(m, 7);
    CHECK((a + b).value() == 4);
    CHECK((b - a).value() == 10);
    CHECK((a * b).value() == 140 % 23);
    CHECK((-b).value() == 16);
    CHECK(m.pow(5, 22) == 1);
    CHECK(m.reduce_signed(-1) == 22);
    CHECK(code_of([] { (void)(Fp(Modulus(7), 1) + Fp(Modulus(11), 1)); }) == Errc::ModulusMismatch);
}

TEST_CASE("pow matches repeated multiplication")
{
    Rng rng(11);
    const Modulus m(10007);
    for (int i = 0; i < 200; ++i) {
        const auto b = rng.uniform(0, 10006);
        const auto e = rng.uniform(0, 3000);
        CHECK(m.pow(b, e) == oracle::powmod_slow(b, e, 10007));
    }
}

TEST_CASE("poly_from_roots small vectors")
{
    const Modulus m(23);
    const auto r = as_fp(m, {3, 5});
    CHECK(coeffs(poly_from_roots(r, Fp(m, 7))) == std::vector<std::uint64_t>{22, 15, 1});
    CHECK(coeffs(poly_from_roots({}, Fp(m, 7))) == std::vector<std::uint64_t>{8}); // empty product is 1
    const auto dup = as_fp(m, {4, 4});
    CHECK(code_of([&] { poly_from_roots(dup, Fp(m, 0)); }) == Errc::DuplicateRoot);
}

TEST_CASE("poly_from_roots matches convolution and evaluates to the mask at each root")
{
    Rng rng(5);
    for (std::uint64_t p : {101ull, 10007ull, 99991ull}) {
        const Modulus m(p);
        for (int trial = 0; trial < 50; ++trial) {
            std::set<std::uint64_t> picked;
            const auto n = rng.uniform(1, 8);
            while (picked.size() < n) {
                picked.insert(rng.uniform(0, p - 1));
            }
            std::vector<std::uint64_t> roots(picked.begin(), picked.end());
            const auto mask = rng.uniform(0, p - 1);
            const Poly f = poly_from_roots(as_fp(m, roots), Fp(m, mask));
            CHECK(coeffs(f) == oracle::expand(roots, mask, p));
            CHECK(f.is_monic());
            CHECK(f.degree() == static_cast<int>(n));
            for (auto r : roots) {
                CHECK(poly_eval(f, Fp(m, r)).value() == mask);
            }
            const auto x = rng.uniform(0, p - 1);
            CHECK(poly_eval(f, Fp(m, x)).value() == oracle::eval(coeffs(f), x, p));
        }
    }
}

TEST_CASE("multiply and divide by a linear factor")
{
    const Modulus m7(7);
    CHECK(coeffs(poly_mul_linear(Poly(m7, {5, 1}), Fp(m7, 3))) == std::vector<std::uint64_t>{6, 2, 1});

    // x^2 - 5x + 6 = (x - 1)(x - 4) + 2 over F_7
    const auto d = poly_div_linear(Poly(m7, {6, 2, 1}), Fp(m7, 1));
    CHECK(coeffs(d.quotient) == std::vector<std::uint64_t>{3, 1});
    CHECK(d.remainder.value() == 2);

    CHECK(code_of([&] { poly_div_linear(Poly::constant(m7, 3), Fp(m7, 1)); }) == Errc::DegreeTooLow);

    Rng rng(9);
    const Modulus m(10007);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint64_t> c(rng.uniform(2, 9));
        for (auto& v : c) {
            v = rng.uniform(0, 10006);
        }
        c.back() = 1;
        const Poly f(m, c);
        const Fp r(m, rng.uniform(0, 10006));
        const auto div = poly_div_linear(f, r);
        CHECK(div.remainder == poly_eval(f, r));
        CHECK(poly_add_constant(poly_mul_linear(div.quotient, r), div.remainder) == f);
    }
}

TEST_CASE("poly_sub trims leading zeros")
{
    const Modulus m(11);
    const Poly f(m, {1, 2, 1});
    const Poly g(m, {4, 2, 1});
    CHECK(coeffs(poly_sub(f, g)) == std::vector<std::uint64_t>{8});
    CHECK(poly_sub(f, f).is_zero());
    CHECK(poly_sub(f, f).degree() == -1);
}

TEST_CASE("find_roots agrees with exhaustive evaluation")
{
    Rng rng(3);
    for (std::uint64_t p : {23ull, 101ull, 1009ull}) {
        const Modulus m(p);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::uint64_t> c(rng.uniform(1, 6));
            for (auto& v : c) {
                v = rng.uniform(0, p - 1);
            }
            c.back() = rng.uniform(1, p - 1);
            const Poly f(m, c);
            const auto scan = find_roots(f);
            CHECK_FALSE(scan.degenerate);
            CHECK(scan.roots == oracle::roots(c, p));
        }
    }
    const Modulus m(23);
    CHECK(find_roots(Poly(m)).degenerate);
    CHECK(find_roots(Poly(m, {22, 15, 1})).roots == oracle::roots({22, 15, 1}, 23));
    CHECK(find_roots(Poly(m, {15, 15, 1})).roots == std::vector<std::uint64_t>{3, 5});
    CHECK(code_of([] { find_roots(Poly(Modulus(999983), {1, 1}), 1000); }) == Errc::ScanBudgetExceeded);
}
