/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/schemes.hpp"

#include "hierkey/error.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <set>
#include <string>

namespace hierkey {

namespace {

constexpr int kMaxResample = 64;

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::uint64_t next_prime_after(std::uint64_t n)
{
    do {
        ++n;
    } while (!is_prime(n));
    return n;
}

// Pre-hash point: Ã(n_j P_i) or g_i^{s_j}. Lin-Hsu hashes this afterwards, so
// collisions here are collisions for every salt.
std::uint64_t raw_point(const PublicBoard& board, std::uint64_t viewer_secret, const PublicClass& target)
{
    const Scheme s = board.scheme();
    if (uses_curve(s)) {
        const CurveContext& curve = *board.params.curve;
        return point_to_scalar(scalar_mul(viewer_secret, *target.public_key, curve), curve).value();
    }
    return board.params.p.pow(*target.base, viewer_secret);
}

/// Shiftable with at least two distinct masks.
bool maskable(std::uint64_t k, const RadixContext& radix)
{
    return shiftable(k, radix) && distinct_masks(k, radix) >= 2;
}

std::uint64_t sample_key(const SchemeParams& params, Rng& rng)
{
    const std::uint64_t p = params.p.value();
    if (!uses_shift(params.scheme)) {
        return rng.uniform(1, p - 1);
    }
    const RadixContext radix = params.radix();
    for (int i = 0; i < 4096; ++i) {
        const std::uint64_t k = rng.uniform(1, p - 1);
        if (maskable(k, radix)) {
            return k;
        }
    }
    throw Error(Errc::NotShiftable, "could not sample a shiftable key");
}

} // namespace

std::string_view to_string(Scheme s) noexcept
{
    switch (s) {
    case Scheme::Akl: return "akl";
    case Scheme::Wu: return "wu";
    case Scheme::JengWang: return "jw";
    case Scheme::LinHsu: return "linhsu";
    case Scheme::Method1: return "m1";
    case Scheme::Method2: return "m2";
    }
    return "?";
}

Scheme parse_scheme(std::string_view tag)
{
    for (Scheme s : {Scheme::Akl, Scheme::Wu, Scheme::JengWang, Scheme::LinHsu, Scheme::Method1, Scheme::Method2}) {
        if (to_string(s) == tag) {
            return s;
        }
    }
    throw Error(Errc::InvalidParameter, "unknown scheme '" + std::string(tag) + "'");
}

bool uses_curve(Scheme s) noexcept
{
    return s == Scheme::JengWang || s == Scheme::LinHsu || s == Scheme::Method1;
}

bool uses_exponent_base(Scheme s) noexcept
{
    return s == Scheme::Wu || s == Scheme::Method2;
}

bool uses_shift(Scheme s) noexcept
{
    return s == Scheme::Method1 || s == Scheme::Method2;
}

bool uses_filters(Scheme s) noexcept
{
    return s != Scheme::Akl;
}

void SchemeParams::validate() const
{
    if (radix_base < 2) {
        throw Error(Errc::InvalidParameter, "radix base must be at least 2");
    }
    if (uses_curve(scheme)) {
        if (!curve) {
            throw Error(Errc::InvalidParameter, std::string(to_string(scheme)) + " needs curve parameters");
        }
        if (curve->p() != p.value()) {
            throw Error(Errc::InvalidParameter, "curve field must equal the filter modulus p");
        }
    }
    if (uses_shift(scheme) && radix().block() < 3) {
        throw Error(Errc::InvalidParameter, "p needs at least four radix digits for shift masking");
    }
}

const PublicClass& PublicBoard::at(const ClassId& id) const
{
    auto it = classes.find(id);
    if (it == classes.end()) {
        throw Error(Errc::UnknownClass, "no class '" + id + "' on the board");
    }
    return it->second;
}

const ClassSecret& CaSecrets::at(const ClassId& id) const
{
    auto it = classes.find(id);
    if (it == classes.end()) {
        throw Error(Errc::UnknownClass, "no class '" + id + "' in the CA store");
    }
    return it->second;
}

AklAssignment akl_setup(const Hierarchy& h, std::uint64_t root, Modulus p,
                        const std::map<ClassId, std::uint64_t>& fixed_primes)
{
    if (root < 2 || root >= p.value()) {
        throw Error(Errc::InvalidParameter, "K_0 must lie in [2, p-1]");
    }
    AklAssignment out{p, root, {}, {}, {}};
    std::set<std::uint64_t> used;
    for (const auto& id : h.classes()) {
        if (auto it = fixed_primes.find(id); it != fixed_primes.end()) {
            out.primes[id] = it->second;
            used.insert(it->second);
        }
    }
    std::uint64_t candidate = 1;
    for (const auto& id : h.classes()) {
        if (out.primes.count(id) != 0) {
            continue;
        }
        do {
            candidate = next_prime_after(candidate);
        } while (used.count(candidate) != 0);
        out.primes[id] = candidate;
        used.insert(candidate);
    }
    for (const auto& id : h.classes()) {
        BigInt t = out.primes[id];
        for (const auto& up : h.strict_predecessors(id)) {
            t *= out.primes[up];
        }
        out.keys[id] = static_cast<std::uint64_t>(boost::multiprecision::powm(BigInt(root), t, BigInt(p.value())));
        out.exponents[id] = std::move(t);
    }
    return out;
}

std::uint64_t akl_derive(std::uint64_t viewer_key, const BigInt& viewer_exponent, const BigInt& target_exponent,
                         const Modulus& p)
{
    if (viewer_exponent == 0 || target_exponent % viewer_exponent != 0) {
        throw Error(Errc::NotPredecessor, "t_i does not divide t_j");
    }
    const BigInt ratio = target_exponent / viewer_exponent;
    return static_cast<std::uint64_t>(boost::multiprecision::powm(BigInt(viewer_key), ratio, BigInt(p.value())));
}

std::uint64_t akl_derive(const AklAssignment& assignment, const ClassId& viewer, const ClassId& target)
{
    auto v = assignment.exponents.find(viewer);
    auto t = assignment.exponents.find(target);
    if (v == assignment.exponents.end() || t == assignment.exponents.end()) {
        throw Error(Errc::UnknownClass, "class not in the assignment");
    }
    return akl_derive(assignment.keys.at(viewer), v->second, t->second, assignment.p);
}

std::uint64_t linhsu_hash(std::uint64_t salt, std::uint64_t value, const Modulus& p)
{
    const std::string msg = std::to_string(salt) + "|" + std::to_string(value);
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(msg.data()), msg.size(), digest);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v = (v << 8) | digest[i];
    }
    return p.reduce(v);
}

bool is_primitive_root(std::uint64_t g, const Modulus& p)
{
    g = p.reduce(g);
    if (g == 0) {
        return false;
    }
    const std::uint64_t order = p.value() - 1;
    for (std::uint64_t f : prime_factors(order)) {
        if (p.pow(g, order / f) == 1) {
            return false;
        }
    }
    return true;
}

KeyState init_state(const SchemeParams& params, std::uint64_t seed, Rng& rng)
{
    params.validate();
    KeyState state{PublicBoard(params), CaSecrets{}};
    state.secrets.seed = seed;
    if (uses_curve(params.scheme)) {
        const CurveContext& curve = *params.curve;
        state.secrets.ca_key = rng.uniform(1, curve.order() - 1);
        state.board.ca_public_key = scalar_mul(state.secrets.ca_key, curve.generator(), curve);
    }
    if (params.scheme == Scheme::Akl) {
        state.secrets.akl_root = rng.uniform(2, params.p.value() - 1);
    }
    if (params.scheme == Scheme::LinHsu) {
        state.board.salt = rng.uniform(1, std::uint64_t{1} << 32);
    }
    return state;
}

ClassRecord enroll_class(const KeyState& state, const ClassId& id, Rng& rng, std::optional<std::uint64_t> key)
{
    const SchemeParams& params = state.board.params;
    const Modulus& p = params.p;
    if (key) {
        if (*key == 0 || *key >= p.value()) {
            throw Error(Errc::OutOfRange, "key must lie in [1, p)");
        }
        if (uses_shift(params.scheme) && !maskable(*key, params.radix())) {
            throw Error(Errc::NotShiftable,
                        "key " + std::to_string(*key) +
                            " needs a top digit below p's and a lower block with at least two distinct rotations");
        }
    }

    ClassRecord rec{id, ClassSecret{}, PublicClass(p)};
    if (params.scheme == Scheme::Akl) {
        return rec; // keys follow from the exponent assignment
    }

    for (int attempt = 0; attempt < kMaxResample; ++attempt) {
        const std::uint64_t chosen_key = key ? *key : sample_key(params, rng);
        if (uses_curve(params.scheme)) {
            const CurveContext& curve = *params.curve;
            const std::uint64_t n = rng.uniform(1, curve.order() - 1);
            rec.pub.public_key = scalar_mul(n, curve.generator(), curve);
            const std::uint64_t ephemeral = rng.uniform(1, curve.order() - 1);
            const auto ct = transport_encrypt(chosen_key, n, *state.board.ca_public_key, ephemeral, curve);
            const auto pt = transport_decrypt(ct, state.secrets.ca_key, curve);
            rec.secret.key = pt.key;
            rec.secret.secret = pt.secret;
        } else {
            std::uint64_t g = 0;
            do {
                g = rng.uniform(2, p.value() - 1);
            } while (!is_primitive_root(g, p));
            rec.pub.base = g;
            rec.secret.key = chosen_key;
            rec.secret.secret = rng.uniform(1, p.value() - 2);
        }

        // secrets pairwise distinct, up to sign on the curve
        bool clash = false;
        for (const auto& [other, other_secret] : state.secrets.classes) {
            const std::uint64_t s = other_secret.secret;
            if (s == rec.secret.secret ||
                (uses_curve(params.scheme) && params.curve->order() - s == rec.secret.secret)) {
                clash = true;
                break;
            }
        }
        // The new class's point in every existing filter must be fresh, and
        // every existing class's point in the new filter must be distinct.
        for (const auto& [other, pub] : state.board.classes) {
            if (clash) {
                break;
            }
            const std::uint64_t mine = raw_point(state.board, rec.secret.secret, pub);
            const auto& other_secret = state.secrets.at(other);
            if (other_secret.mask_root && *other_secret.mask_root == mine) {
                clash = true;
                break;
            }
            for (const auto& [third, third_secret] : state.secrets.classes) {
                if (third != other && raw_point(state.board, third_secret.secret, pub) == mine) {
                    clash = true;
                    break;
                }
            }
            if (clash) {
                break;
            }
        }
        if (!clash) {
            std::set<std::uint64_t> seen;
            for (const auto& [other, other_secret] : state.secrets.classes) {
                if (!seen.insert(raw_point(state.board, other_secret.secret, rec.pub)).second) {
                    clash = true;
                    break;
                }
            }
        }
        if (!clash) {
            return rec;
        }
    }
    throw Error(Errc::RootCollision, "could not find collision-free secrets for '" + id + "'");
}

std::uint64_t evaluation_point(const PublicBoard& board, std::uint64_t viewer_secret, const ClassId& target)
{
    const std::uint64_t raw = raw_point(board, viewer_secret, board.at(target));
    if (board.scheme() == Scheme::LinHsu) {
        return linhsu_hash(*board.salt, raw, board.params.p);
    }
    return raw;
}

std::uint64_t filter_mask(const KeyState& state, const ClassId& target)
{
    const std::uint64_t key = state.secrets.at(target).key;
    if (!uses_shift(state.scheme())) {
        return key;
    }
    return cyclic_shift(key, *state.board.at(target).shift, state.board.params.radix());
}

std::vector<std::uint64_t> filter_roots(const KeyState& state, const ClassId& target)
{
    std::vector<std::uint64_t> roots;
    for (const auto& pred : state.board.hierarchy.strict_predecessors(target)) {
        roots.push_back(evaluation_point(state.board, state.secrets.at(pred).secret, target));
    }
    if (uses_shift(state.scheme())) {
        roots.push_back(*state.secrets.at(target).mask_root);
    }
    return roots;
}

SecureFilter build_filter(const KeyState& state, const ClassId& target)
{
    const Scheme scheme = state.scheme();
    if (!uses_filters(scheme)) {
        throw Error(Errc::InvalidParameter, "Akl-Taylor publishes exponents, not filters");
    }
    const Modulus& p = state.modulus();
    const PublicClass& pub = state.board.at(target);
    SecureFilter out{target, scheme, Poly(p), pub.shift, state.board.salt};
    if (state.board.hierarchy.strict_predecessors(target).empty()) {
        return out;
    }
    std::vector<Fp> roots;
    for (std::uint64_t r : filter_roots(state, target)) {
        roots.emplace_back(p, r);
    }
    try {
        out.poly = poly_from_roots(roots, Fp(p, filter_mask(state, target)));
    } catch (const Error& e) {
        if (e.code() == Errc::DuplicateRoot) {
            throw Error(Errc::RootCollision, "filter of '" + target + "': " + e.what());
        }
        throw;
    }
    return out;
}

bool evaluation_points_distinct(const KeyState& state, const ClassId& target)
{
    std::set<std::uint64_t> seen;
    for (const auto& [id, secret] : state.secrets.classes) {
        if (id == target) {
            continue;
        }
        if (!seen.insert(evaluation_point(state.board, secret.secret, target)).second) {
            return false;
        }
    }
    const auto& h = state.secrets.at(target).mask_root;
    return !h || seen.count(*h) == 0;
}

void choose_mask(KeyState& state, const ClassId& target, Rng& rng)
{
    if (!uses_shift(state.scheme())) {
        return;
    }
    const RadixContext radix = state.board.params.radix();
    const Modulus& p = state.modulus();
    ClassSecret& secret = state.secrets.classes.at(target);
    PublicClass& pub = state.board.classes.at(target);

    std::set<std::uint64_t> points;
    for (const auto& [id, other] : state.secrets.classes) {
        if (id != target) {
            points.insert(evaluation_point(state.board, other.secret, target));
        }
    }
    const auto old_h = secret.mask_root;
    std::optional<std::uint64_t> h;
    for (int i = 0; i < kMaxResample && !h; ++i) {
        const std::uint64_t candidate = rng.uniform(0, p.value() - 1);
        if (points.count(candidate) == 0 && candidate != old_h) {
            h = candidate;
        }
    }
    if (!h) {
        throw Error(Errc::RootCollision, "no fresh h for '" + target + "'");
    }

    const std::optional<std::uint64_t> old_masked =
        pub.shift ? std::optional(cyclic_shift(secret.key, *pub.shift, radix)) : std::nullopt;
    std::vector<unsigned> fresh;
    for (unsigned candidate = 1; candidate < radix.block(); ++candidate) {
        const std::uint64_t masked = cyclic_shift(secret.key, candidate, radix);
        if (masked != secret.key && masked != old_masked) {
            fresh.push_back(candidate);
        }
    }
    std::optional<unsigned> l;
    if (!fresh.empty()) {
        l = fresh[rng.uniform(0, fresh.size() - 1)];
    }
    if (!l) {
        throw Error(Errc::RootCollision, "no fresh shift index for '" + target + "'");
    }
    secret.mask_root = h;
    pub.shift = l;
}

void choose_salt(KeyState& state, Rng& rng)
{
    if (state.scheme() != Scheme::LinHsu) {
        return;
    }
    const auto previous = state.board.salt;
    for (int i = 0; i < kMaxResample; ++i) {
        state.board.salt = rng.uniform(1, std::uint64_t{1} << 32);
        if (state.board.salt == previous) {
            continue;
        }
        bool ok = true;
        for (const auto& [id, _] : state.board.classes) {
            if (!evaluation_points_distinct(state, id)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return;
        }
    }
    throw Error(Errc::RootCollision, "no salt separates every filter's roots");
}

void publish_all(KeyState& state)
{
    if (state.scheme() == Scheme::Akl) {
        std::map<ClassId, std::uint64_t> fixed;
        for (const auto& [id, pub] : state.board.classes) {
            if (pub.prime != 0) {
                fixed[id] = pub.prime;
            }
        }
        const auto assignment =
            akl_setup(state.board.hierarchy, *state.secrets.akl_root, state.modulus(), fixed);
        for (auto& [id, pub] : state.board.classes) {
            pub.prime = assignment.primes.at(id);
            pub.exponent = assignment.exponents.at(id);
            state.secrets.classes.at(id).key = assignment.keys.at(id);
        }
        return;
    }
    for (auto& [id, pub] : state.board.classes) {
        pub.filter = build_filter(state, id).poly;
    }
}

KeyState generate_state(const SchemeParams& params, const Hierarchy& h, std::uint64_t seed, Rng& rng)
{
    KeyState state = init_state(params, seed, rng);
    for (const auto& id : h.topological_order()) {
        ClassRecord rec = enroll_class(state, id, rng);
        state.board.classes.emplace(id, std::move(rec.pub));
        state.secrets.classes.emplace(id, rec.secret);
    }
    state.board.hierarchy = h;
    choose_salt(state, rng);
    for (const auto& id : h.classes()) {
        choose_mask(state, id, rng);
    }
    publish_all(state);
    return state;
}

ViewerCredentials credentials_of(const KeyState& state, const ClassId& id)
{
    const ClassSecret& s = state.secrets.at(id);
    return ViewerCredentials{id, s.key, s.secret};
}

std::uint64_t derive_key(const PublicBoard& board, const ViewerCredentials& viewer, const ClassId& target)
{
    const PublicClass& pub = board.at(target);
    if (board.scheme() == Scheme::Akl) {
        return akl_derive(viewer.key, board.at(viewer.id).exponent, pub.exponent, board.params.p);
    }
    if (pub.filter.is_zero()) {
        throw Error(Errc::NotPredecessor, "'" + target + "' has no predecessors");
    }
    const Modulus& p = board.params.p;
    const std::uint64_t x = evaluation_point(board, viewer.secret, target);
    const std::uint64_t value = poly_eval(pub.filter, Fp(p, x)).value();
    if (uses_shift(board.scheme())) {
        return cyclic_shift(value, -static_cast<long long>(*pub.shift), board.params.radix());
    }
    return value;
}

} // namespace hierkey
