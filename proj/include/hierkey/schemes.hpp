/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include "hierkey/curve.hpp"
#include "hierkey/hierarchy.hpp"
#include "hierkey/modmath.hpp"
#include "hierkey/radixshift.hpp"
#include "hierkey/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace hierkey {

using BigInt = boost::multiprecision::cpp_int;

enum class Scheme {
    Akl,      // exponent divisibility, K_i = K_0^{t_i}
    Wu,       // filter roots g_i^{s_j}
    JengWang, // filter roots Ã(n_j P_i)
    LinHsu,   // filter roots H(r || Ã(n_j P_i))
    Method1,  // (x - h_i) * JW roots, mask L_{l_i}(K_i)
    Method2,  // (x - h_i) * Wu roots, mask L_{l_i}(K_i)
};

std::string_view to_string(Scheme s) noexcept;
/// Tags: akl, wu, jw, linhsu, m1, m2.
Scheme parse_scheme(std::string_view tag);

bool uses_curve(Scheme s) noexcept;
bool uses_exponent_base(Scheme s) noexcept;
bool uses_shift(Scheme s) noexcept;
bool uses_filters(Scheme s) noexcept;

/// Everything the CA publishes at initialization.
struct SchemeParams {
    Scheme scheme;
    Modulus p;
    unsigned radix_base = 10;
    std::optional<CurveContext> curve;

    /// Checks the pieces fit together: curve over the same p for curve
    /// schemes, a rotating block of at least two digits for shift schemes.
    void validate() const;
    RadixContext radix() const { return RadixContext(radix_base, p.value()); }

    friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Per-class public data.
struct PublicClass {
    explicit PublicClass(Modulus m) : filter(m) {}

    Poly filter;                             // zero exactly when the class has no strict predecessors
    std::optional<Point> public_key;         // P_i = n_i G
    std::optional<std::uint64_t> base;       // g_i
    std::optional<unsigned> shift;           // l_i
    std::uint64_t prime = 0;                 // Akl-Taylor per-class prime
    BigInt exponent = 0;                     // Akl-Taylor t_i

    friend bool operator==(const PublicClass&, const PublicClass&) = default;
};

struct PublicBoard {
    explicit PublicBoard(SchemeParams params) : params(std::move(params)) {}

    std::uint64_t epoch = 0;
    SchemeParams params;
    std::optional<Point> ca_public_key; // P_ca
    std::optional<std::uint64_t> salt;  // Lin-Hsu r, refreshed every epoch
    Hierarchy hierarchy;
    std::map<ClassId, PublicClass> classes;

    Scheme scheme() const noexcept { return params.scheme; }
    const PublicClass& at(const ClassId& id) const;

    friend bool operator==(const PublicBoard&, const PublicBoard&) = default;
};

struct ClassSecret {
    std::uint64_t key = 0;                  // K_i
    std::uint64_t secret = 0;               // n_i or s_i
    std::optional<std::uint64_t> mask_root; // h_i, CA only

    friend bool operator==(const ClassSecret&, const ClassSecret&) = default;
};

struct CaSecrets {
    std::uint64_t epoch = 0;
    std::uint64_t seed = 0;                  // RNG seed for reproducible runs
    std::uint64_t ca_key = 0;                // n_ca
    std::optional<std::uint64_t> akl_root;   // K_0
    std::map<ClassId, ClassSecret> classes;

    const ClassSecret& at(const ClassId& id) const;

    friend bool operator==(const CaSecrets&, const CaSecrets&) = default;
};

/// The CA's complete view: what it publishes and what it keeps.
struct KeyState {
    PublicBoard board;
    CaSecrets secrets;

    Scheme scheme() const noexcept { return board.scheme(); }
    const Modulus& modulus() const noexcept { return board.params.p; }
};

struct ClassRecord {
    ClassId id;
    ClassSecret secret;
    PublicClass pub;
};

struct SecureFilter {
    ClassId owner;
    Scheme scheme;
    Poly poly;
    std::optional<unsigned> shift;
    std::optional<std::uint64_t> salt;
};

struct AklAssignment {
    Modulus p;
    std::uint64_t root; // K_0
    std::map<ClassId, std::uint64_t> primes;
    std::map<ClassId, BigInt> exponents;
    std::map<ClassId, std::uint64_t> keys;
};

/// Assigns distinct primes (keeping any in `fixed_primes`, handing out the
/// smallest unused ones to the rest in id order) and t_i = product of the
/// primes over the up-set of u_i.
AklAssignment akl_setup(const Hierarchy& h, std::uint64_t root, Modulus p,
                        const std::map<ClassId, std::uint64_t>& fixed_primes = {});

/// K_j = K_i^{t_j / t_i}. Throws NotPredecessor when t_i does not divide t_j.
std::uint64_t akl_derive(const AklAssignment& assignment, const ClassId& viewer, const ClassId& target);
std::uint64_t akl_derive(std::uint64_t viewer_key, const BigInt& viewer_exponent, const BigInt& target_exponent,
                         const Modulus& p);

/// Default Lin-Hsu hash: SHA-256 of "<r>|<v>" in decimal, first 8 bytes
/// big-endian, reduced mod p.
std::uint64_t linhsu_hash(std::uint64_t salt, std::uint64_t value, const Modulus& p);

/// True when g generates the multiplicative group mod p.
bool is_primitive_root(std::uint64_t g, const Modulus& p);

/// Fresh CA state with no classes: n_ca and P_ca for curve schemes, K_0 for
/// Akl-Taylor, an initial salt for Lin-Hsu.
KeyState init_state(const SchemeParams& params, std::uint64_t seed, Rng& rng);

/// Key generation for one class: the class picks K (or uses `key`), its
/// scheme secret and public value; curve schemes hand (K, n) to the CA through
/// the transport encryption. The secret is resampled until every evaluation
/// point it contributes is collision-free. Throws NotShiftable for an explicit
/// key failing the shift condition or having fewer than two distinct masks,
/// RootCollision after bounded resampling.
ClassRecord enroll_class(const KeyState& state, const ClassId& id, Rng& rng,
                         std::optional<std::uint64_t> key = std::nullopt);

/// The value `viewer` plugs into `target`'s filter, computed from the viewer's
/// secret and the target's public data only.
std::uint64_t evaluation_point(const PublicBoard& board, std::uint64_t viewer_secret, const ClassId& target);

/// The mask added to the root product: K_i or L_{l_i}(K_i).
std::uint64_t filter_mask(const KeyState& state, const ClassId& target);

/// Roots of the target's filter: evaluation points of all strict
/// predecessors, plus h_i for the shift schemes.
std::vector<std::uint64_t> filter_roots(const KeyState& state, const ClassId& target);

/// From-scratch construction of one filter from the CA store.
SecureFilter build_filter(const KeyState& state, const ClassId& target);

/// True when every class's evaluation point for `target`'s filter is
/// distinct and none hits h_target.
bool evaluation_points_distinct(const KeyState& state, const ClassId& target);

/// Chooses h_i and l_i for the shift schemes: h_i avoids every evaluation
/// point of the filter and the previous h_i; l_i in [1, m-1] gives a mask
/// different from both K_i and the previous mask. Throws RootCollision when
/// either choice is impossible.
void choose_mask(KeyState& state, const ClassId& target, Rng& rng);

/// Lin-Hsu: draws a new r until every filter has distinct evaluation points.
void choose_salt(KeyState& state, Rng& rng);

/// Rebuilds every published filter (or Akl-Taylor exponent) from the store.
void publish_all(KeyState& state);

/// Static key generation for a whole hierarchy.
KeyState generate_state(const SchemeParams& params, const Hierarchy& h, std::uint64_t seed, Rng& rng);

struct ViewerCredentials {
    ClassId id;
    std::uint64_t key = 0;
    std::uint64_t secret = 0;
};

ViewerCredentials credentials_of(const KeyState& state, const ClassId& id);

/// Key derivation using only the public board and the viewer's own
/// credentials. A viewer that is not a strict predecessor gets a garbage
/// value; there is no way to detect that from public data alone. Throws
/// NotPredecessor when the target's filter is zero (it has no predecessors)
/// or, for Akl-Taylor, when the exponents do not divide.
std::uint64_t derive_key(const PublicBoard& board, const ViewerCredentials& viewer, const ClassId& target);

} // namespace hierkey
