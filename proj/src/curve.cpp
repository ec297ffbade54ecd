/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/curve.hpp"

#include "hierkey/error.hpp"

#include <string>
#include <vector>

namespace hierkey {

std::string_view to_string(PointMap map) noexcept
{
    switch (map) {
    case PointMap::XCoordinate: return "x";
    }
    return "x";
}

PointMap parse_point_map(std::string_view id)
{
    if (id == "x") {
        return PointMap::XCoordinate;
    }
    throw Error(Errc::InvalidParameter, "unknown point map '" + std::string(id) + "'");
}

namespace {

std::uint64_t curve_rhs(const Modulus& f, std::uint64_t a, std::uint64_t b, std::uint64_t x)
{
    return f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a, x)), b);
}

void require_on_curve(const Point& p, const CurveContext& ctx)
{
    if (!ctx.on_curve(p)) {
        throw Error(Errc::OffCurve,
                    "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is not on the curve");
    }
}

// counts[v] = #{y : y^2 = v}
std::vector<std::uint8_t> square_counts(const Modulus& f)
{
    std::vector<std::uint8_t> counts(f.value(), 0);
    for (std::uint64_t y = 0; y < f.value(); ++y) {
        ++counts[f.mul(y, y)];
    }
    return counts;
}

std::uint64_t count_with_table(const Modulus& f, std::uint64_t a, std::uint64_t b,
                               const std::vector<std::uint8_t>& squares)
{
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < f.value(); ++x) {
        n += squares[curve_rhs(f, a, b, x)];
    }
    return n;
}

bool singular(const Modulus& f, std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t disc = f.add(f.mul(4, f.mul(f.mul(a, a), a)), f.mul(27, f.mul(b, b)));
    return disc == 0;
}

} // namespace

CurveContext::CurveContext(std::uint64_t p, std::uint64_t a, std::uint64_t b, Point g, std::uint64_t q,
                           PointMap map)
    : field_(p), a_(a), b_(b), g_(g), q_(q), map_(map)
{
    if (a >= p || b >= p) {
        throw Error(Errc::InvalidParameter, "curve coefficients must be reduced mod p");
    }
    if (singular(field_, a, b)) {
        throw Error(Errc::InvalidParameter, "4a^3 + 27b^2 = 0 mod p: singular curve");
    }
    if (g.infinity) {
        throw Error(Errc::InvalidParameter, "base point must be affine");
    }
    require_on_curve(g, *this);
    if (!is_prime(q)) {
        throw Error(Errc::InvalidParameter, "base point order " + std::to_string(q) + " is not prime");
    }
    if (!scalar_mul(q, g, *this).infinity) {
        throw Error(Errc::InvalidParameter, "q*G != O");
    }
    if (p <= kCurveEnumerationBound && count_points(*this) % q != 0) {
        throw Error(Errc::InvalidParameter, "q does not divide the group order");
    }
}

CurveContext CurveContext::toy()
{
    return CurveContext(17, 2, 2, Point::affine(5, 1), 19);
}

CurveContext CurveContext::generate(std::uint64_t p)
{
    const Modulus f(p);
    if (p > kCurveEnumerationBound) {
        throw Error(Errc::InvalidParameter,
                    "curve generation needs p <= " + std::to_string(kCurveEnumerationBound) + "; pass --curve");
    }
    const auto squares = square_counts(f);
    for (std::uint64_t a = 1; a < p; ++a) {
        for (std::uint64_t b = 1; b < p && b <= 64; ++b) {
            if (singular(f, a, b)) {
                continue;
            }
            const std::uint64_t n = count_with_table(f, a, b, squares);
            if (n <= 3 || !is_prime(n)) {
                continue;
            }
            for (std::uint64_t x = 0; x < p; ++x) {
                const std::uint64_t rhs = curve_rhs(f, a, b, x);
                if (squares[rhs] == 0) {
                    continue;
                }
                for (std::uint64_t y = 0; y < p; ++y) {
                    if (f.mul(y, y) == rhs) {
                        return CurveContext(p, a, b, Point::affine(x, y), n);
                    }
                }
            }
        }
    }
    throw Error(Errc::InvalidParameter, "no prime-order curve found over p=" + std::to_string(p));
}

bool CurveContext::on_curve(const Point& p) const noexcept
{
    if (p.infinity) {
        return true;
    }
    if (p.x >= field_.value() || p.y >= field_.value()) {
        return false;
    }
    return field_.mul(p.y, p.y) == curve_rhs(field_, a_, b_, p.x);
}

std::uint64_t count_points(const CurveContext& ctx)
{
    if (ctx.p() > kCurveEnumerationBound) {
        throw Error(Errc::InvalidParameter, "point enumeration limited to small p");
    }
    return count_with_table(ctx.field(), ctx.a(), ctx.b(), square_counts(ctx.field()));
}

Point point_neg(const Point& p, const CurveContext& ctx)
{
    if (p.infinity) {
        return p;
    }
    return Point::affine(p.x, ctx.field().neg(p.y));
}

Point point_add(const Point& p, const Point& q, const CurveContext& ctx)
{
    require_on_curve(p, ctx);
    require_on_curve(q, ctx);
    if (p.infinity) {
        return q;
    }
    if (q.infinity) {
        return p;
    }
    const Modulus& f = ctx.field();
    std::uint64_t slope = 0;
    if (p.x == q.x) {
        if (f.add(p.y, q.y) == 0) {
            return Point::at_infinity();
        }
        // doubling: (3x^2 + a) / 2y
        slope = f.mul(f.add(f.mul(3, f.mul(p.x, p.x)), ctx.a()), f.inv(f.mul(2, p.y)));
    } else {
        slope = f.mul(f.sub(q.y, p.y), f.inv(f.sub(q.x, p.x)));
    }
    const std::uint64_t x = f.sub(f.sub(f.mul(slope, slope), p.x), q.x);
    const std::uint64_t y = f.sub(f.mul(slope, f.sub(p.x, x)), p.y);
    return Point::affine(x, y);
}

Point scalar_mul(std::uint64_t n, const Point& p, const CurveContext& ctx)
{
    require_on_curve(p, ctx);
    Point acc = Point::at_infinity();
    Point addend = p;
    while (n != 0) {
        if (n & 1) {
            acc = point_add(acc, addend, ctx);
        }
        n >>= 1;
        if (n != 0) {
            addend = point_add(addend, addend, ctx);
        }
    }
    return acc;
}

Fp point_to_scalar(const Point& p, const CurveContext& ctx)
{
    if (p.infinity) {
        throw Error(Errc::InfinityPoint, "the point at infinity has no scalar image");
    }
    switch (ctx.map()) {
    case PointMap::XCoordinate: return Fp(ctx.field(), p.x);
    }
    return Fp(ctx.field(), p.x);
}

TransportCiphertext transport_encrypt(std::uint64_t key, std::uint64_t secret, const Point& ca_public,
                                      std::uint64_t ephemeral, const CurveContext& ctx)
{
    if (key >= ctx.p()) {
        throw Error(Errc::OutOfRange, "key must lie in [0, p)");
    }
    if (secret >= ctx.order()) {
        throw Error(Errc::OutOfRange, "secret must lie in [0, q)");
    }
    const Point shared = scalar_mul(ephemeral, ca_public, ctx);
    if (shared.infinity) {
        throw Error(Errc::DegenerateEphemeral, "k*P_ca is the point at infinity");
    }
    TransportCiphertext ct;
    ct.ephemeral = scalar_mul(ephemeral, ctx.generator(), ctx);
    ct.masked_key = ctx.field().add(key, shared.x);
    ct.masked_secret = (secret + shared.y % ctx.order()) % ctx.order();
    return ct;
}

TransportPlaintext transport_decrypt(const TransportCiphertext& ct, std::uint64_t ca_secret,
                                     const CurveContext& ctx)
{
    require_on_curve(ct.ephemeral, ctx);
    if (ct.ephemeral.infinity) {
        throw Error(Errc::DegenerateEphemeral, "ephemeral point is O");
    }
    const Point shared = scalar_mul(ca_secret, ct.ephemeral, ctx);
    if (shared.infinity) {
        throw Error(Errc::DegenerateEphemeral, "n_ca*C1 is the point at infinity");
    }
    TransportPlaintext pt;
    pt.key = ctx.field().sub(ctx.field().reduce(ct.masked_key), shared.x);
    const std::uint64_t q = ctx.order();
    pt.secret = (ct.masked_secret % q + q - shared.y % q) % q;
    return pt;
}

} // namespace hierkey
