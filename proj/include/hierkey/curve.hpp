/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include "hierkey/modmath.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace hierkey {

/// Affine point or the point at infinity O.
struct Point {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    bool infinity = true;

    static Point at_infinity() { return Point{}; }
    static Point affine(std::uint64_t x, std::uint64_t y) { return Point{x, y, false}; }

    friend bool operator==(const Point&, const Point&) = default;
};

/// How a curve point is turned into a filter root.
enum class PointMap {
    XCoordinate,
};

std::string_view to_string(PointMap map) noexcept;
PointMap parse_point_map(std::string_view id);

/// Curves with p up to this bound are validated by exhaustive point counting.
inline constexpr std::uint64_t kCurveEnumerationBound = std::uint64_t{1} << 20;

/// Short Weierstrass curve y^2 = x^3 + ax + b over GF(p) with a base point G
/// of prime order q. Immutable once validated.
class CurveContext {
public:
    /// Validates discriminant, G on the curve, q prime and q·G = O. For
    /// p <= kCurveEnumerationBound the point count is also enumerated and q
    /// must divide it. Throws InvalidParameter / OffCurve.
    CurveContext(std::uint64_t p, std::uint64_t a, std::uint64_t b, Point g, std::uint64_t q,
                 PointMap map = PointMap::XCoordinate);

    /// y^2 = x^3 + 2x + 2 over F_17, G = (5, 1), q = 19.
    static CurveContext toy();

    /// Deterministic search for a curve over p whose whole group has prime
    /// order; G is the affine point with the smallest x (smaller y on ties).
    /// Requires p <= kCurveEnumerationBound.
    static CurveContext generate(std::uint64_t p);

    const Modulus& field() const noexcept { return field_; }
    std::uint64_t p() const noexcept { return field_.value(); }
    std::uint64_t a() const noexcept { return a_; }
    std::uint64_t b() const noexcept { return b_; }
    const Point& generator() const noexcept { return g_; }
    std::uint64_t order() const noexcept { return q_; }
    PointMap map() const noexcept { return map_; }

    bool on_curve(const Point& p) const noexcept;

    friend bool operator==(const CurveContext&, const CurveContext&) = default;

private:
    Modulus field_;
    std::uint64_t a_;
    std::uint64_t b_;
    Point g_;
    std::uint64_t q_;
    PointMap map_;
};

/// Number of points including O, by enumeration. Requires p <= bound.
std::uint64_t count_points(const CurveContext& ctx);

Point point_neg(const Point& p, const CurveContext& ctx);
/// Group law with O as identity. Throws OffCurve for foreign points.
Point point_add(const Point& p, const Point& q, const CurveContext& ctx);
/// Double-and-add. Throws OffCurve.
Point scalar_mul(std::uint64_t n, const Point& p, const CurveContext& ctx);
/// The agreed map Ã into Z_p. Throws InfinityPoint for O.
Fp point_to_scalar(const Point& p, const CurveContext& ctx);

/// {kG, (K, n) masked by kP_ca}. K is masked additively mod p with x(kP_ca),
/// n mod q with y(kP_ca) mod q.
struct TransportCiphertext {
    Point ephemeral;
    std::uint64_t masked_key = 0;
    std::uint64_t masked_secret = 0;

    friend bool operator==(const TransportCiphertext&, const TransportCiphertext&) = default;
};

struct TransportPlaintext {
    std::uint64_t key = 0;
    std::uint64_t secret = 0;

    friend bool operator==(const TransportPlaintext&, const TransportPlaintext&) = default;
};

TransportCiphertext transport_encrypt(std::uint64_t key, std::uint64_t secret, const Point& ca_public,
                                      std::uint64_t ephemeral, const CurveContext& ctx);
TransportPlaintext transport_decrypt(const TransportCiphertext& ct, std::uint64_t ca_secret,
                                     const CurveContext& ctx);

} // namespace hierkey
