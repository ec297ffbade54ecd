/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/curve.hpp"
#include "hierkey/error.hpp"
#include "hierkey/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hierkey;

namespace {

Point from_oracle(const oracle::Pt& p)
{
    return p.inf ? Point::at_infinity() : Point::affine(p.x, p.y);
}

std::vector<Point> group_elements(const CurveContext& c)
{
    std::vector<Point> out{Point::at_infinity()};
    for (const auto& p : oracle::all_points(c.p(), c.a(), c.b())) {
        out.push_back(from_oracle(p));
    }
    return out;
}

oracle::Pt to_oracle(const Point& p)
{
    return oracle::Pt{p.x, p.y, p.infinity};
}

} // namespace

TEST_CASE("toy curve parameters")
{
    const CurveContext c = CurveContext::toy();
    CHECK(c.p() == 17);
    CHECK(c.order() == 19);
    CHECK(count_points(c) == 19);
    CHECK(oracle::all_points(17, 2, 2).size() + 1 == 19);
    CHECK(c.on_curve(c.generator()));
    CHECK_FALSE(c.on_curve(Point::affine(5, 2)));
}

TEST_CASE("toy curve multiples")
{
    const CurveContext c = CurveContext::toy();
    const Point g = c.generator();
    CHECK(scalar_mul(2, g, c) == Point::affine(6, 3));
    CHECK(scalar_mul(5, g, c) == Point::affine(9, 16));
    CHECK(scalar_mul(10, g, c) == Point::affine(7, 11));
    CHECK(scalar_mul(19, g, c).infinity);
    CHECK(scalar_mul(0, g, c).infinity);
    CHECK(scalar_mul(20, g, c) == g);
}

TEST_CASE("group law agrees with chord enumeration on every pair")
{
    const CurveContext c = CurveContext::toy();
    const auto all = group_elements(c);
    for (const Point& p : all) {
        for (const Point& q : all) {
            const Point r = point_add(p, q, c);
            CHECK(c.on_curve(r));
            CHECK(r == from_oracle(oracle::add(to_oracle(p), to_oracle(q), c.a(), c.b(), c.p())));
            CHECK(r == point_add(q, p, c));
        }
        CHECK(point_add(p, point_neg(p, c), c).infinity);
    }
}

TEST_CASE("associativity on every triple")
{
    const CurveContext c = CurveContext::toy();
    const auto all = group_elements(c);
    for (const Point& p : all) {
        for (const Point& q : all) {
            for (const Point& r : all) {
                CHECK(point_add(point_add(p, q, c), r, c) == point_add(p, point_add(q, r, c), c));
            }
        }
    }
}

TEST_CASE("scalar multiplication equals repeated addition")
{
    const CurveContext c = CurveContext::toy();
    Point acc = Point::at_infinity();
    for (std::uint64_t n = 0; n <= 40; ++n) {
        CHECK(scalar_mul(n, c.generator(), c) == acc);
        acc = point_add(acc, c.generator(), c);
    }
}

TEST_CASE("constructor validation")
{
    CHECK_THROWS_AS(CurveContext(17, 2, 2, Point::affine(5, 2), 19), Error);         // off curve
    CHECK_THROWS_AS(CurveContext(17, 2, 2, Point::affine(5, 1), 18), Error);         // wrong order
    CHECK_THROWS_AS(CurveContext(17, 0, 0, Point::affine(0, 0), 19), Error);         // singular
    CHECK_THROWS_AS(CurveContext(17, 2, 2, Point::at_infinity(), 19), Error);       // base point O
    CHECK(parse_point_map("x") == PointMap::XCoordinate);
    CHECK_THROWS_AS(parse_point_map("hash"), Error);
}

TEST_CASE("point_to_scalar")
{
    const CurveContext c = CurveContext::toy();
    CHECK(point_to_scalar(Point::affine(6, 3), c).value() == 6);
    try {
        point_to_scalar(Point::at_infinity(), c);
        FAIL("expected InfinityPoint");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InfinityPoint);
    }
}

TEST_CASE("transport worked vector")
{
    const CurveContext c = CurveContext::toy();
    const Point ca = scalar_mul(5, c.generator(), c);
    const auto ct = transport_encrypt(7, 3, ca, 2, c);
    CHECK(ct.ephemeral == Point::affine(6, 3));
    CHECK(ct.masked_key == 14);
    CHECK(ct.masked_secret == 14);
    CHECK(transport_decrypt(ct, 5, c) == TransportPlaintext{7, 3});
}

TEST_CASE("transport round trips and rejects bad inputs")
{
    const CurveContext c = CurveContext::toy();
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const auto n_ca = rng.uniform(1, 18);
        const Point ca = scalar_mul(n_ca, c.generator(), c);
        const auto key = rng.uniform(0, 16);
        const auto secret = rng.uniform(0, 18);
        const auto k = rng.uniform(1, 18);
        CHECK(transport_decrypt(transport_encrypt(key, secret, ca, k, c), n_ca, c) == TransportPlaintext{key, secret});
    }
    const Point ca = scalar_mul(5, c.generator(), c);
    CHECK_THROWS_AS(transport_encrypt(17, 1, ca, 2, c), Error);
    CHECK_THROWS_AS(transport_encrypt(1, 19, ca, 2, c), Error);
    CHECK_THROWS_AS(transport_encrypt(1, 1, ca, 19, c), Error);
    TransportCiphertext bad{Point::affine(5, 2), 0, 0};
    CHECK_THROWS_AS(transport_decrypt(bad, 5, c), Error);
}

TEST_CASE("generated curves have prime order")
{
    for (std::uint64_t p : {1009ull, 10007ull}) {
        const CurveContext c = CurveContext::generate(p);
        CHECK(c.p() == p);
        CHECK(count_points(c) == c.order());
        CHECK(oracle::all_points(c.p(), c.a(), c.b()).size() + 1 == c.order());
        CHECK(scalar_mul(c.order(), c.generator(), c).infinity);
    }
    CHECK_THROWS_AS(CurveContext::generate(2147483647), Error);
}
