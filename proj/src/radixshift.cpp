/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/radixshift.hpp"

#include "hierkey/error.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace hierkey {

RadixContext::RadixContext(unsigned base, std::uint64_t modulus) : base_(base), p_(modulus), width_(0), p_top_(0)
{
    if (base < 2) {
        throw Error(Errc::InvalidParameter, "radix base must be at least 2");
    }
    if (modulus <= base) {
        throw Error(Errc::InvalidParameter, "modulus must exceed the radix base");
    }
    for (std::uint64_t v = modulus; v != 0; v /= base) {
        p_top_ = static_cast<unsigned>(v % base);
        ++width_;
    }
}

std::vector<unsigned> to_digits(std::uint64_t k, const RadixContext& ctx)
{
    if (k >= ctx.modulus()) {
        throw Error(Errc::OutOfRange, std::to_string(k) + " is not below p=" + std::to_string(ctx.modulus()));
    }
    std::vector<unsigned> digits(ctx.width(), 0);
    for (unsigned i = 0; i < ctx.width(); ++i) {
        digits[i] = static_cast<unsigned>(k % ctx.base());
        k /= ctx.base();
    }
    return digits;
}

std::uint64_t from_digits(const std::vector<unsigned>& digits, unsigned base)
{
    std::uint64_t v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        v = v * base + *it;
    }
    return v;
}

std::uint64_t cyclic_shift(std::uint64_t k, long long l, const RadixContext& ctx)
{
    auto digits = to_digits(k, ctx);
    const auto m = static_cast<long long>(ctx.block());
    if (m == 0) {
        return k;
    }
    const long long shift = ((l % m) + m) % m;
    // Moving each lower digit up by `shift` places is a right rotation of the
    // little-endian block.
    std::rotate(digits.begin(), digits.begin() + (m - shift), digits.begin() + m);
    return from_digits(digits, ctx.base()) % ctx.modulus();
}

bool shiftable(std::uint64_t k, const RadixContext& ctx)
{
    const auto digits = to_digits(k, ctx);
    if (digits.back() >= ctx.modulus_top_digit()) {
        return false;
    }
    const auto block_end = digits.begin() + ctx.block();
    return std::adjacent_find(digits.begin(), block_end, std::not_equal_to<>()) != block_end;
}

std::size_t distinct_masks(std::uint64_t k, const RadixContext& ctx)
{
    std::set<std::uint64_t> seen;
    for (long long l = 1; l < static_cast<long long>(ctx.block()); ++l) {
        const std::uint64_t v = cyclic_shift(k, l, ctx);
        if (v != k) {
            seen.insert(v);
        }
    }
    return seen.size();
}

} // namespace hierkey
