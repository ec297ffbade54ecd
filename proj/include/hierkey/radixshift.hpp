/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include <cstdint>
#include <vector>

namespace hierkey {

/// Fixed-width radix-b layout of the residues mod p. Every value is expanded
/// to `width()` digits (the width of p itself), padding with leading zeros.
class RadixContext {
public:
    RadixContext(unsigned base, std::uint64_t modulus);

    unsigned base() const noexcept { return base_; }
    std::uint64_t modulus() const noexcept { return p_; }
    /// m + 1: digit count of p in this base.
    unsigned width() const noexcept { return width_; }
    /// m: length of the rotating block below the fixed top digit.
    unsigned block() const noexcept { return width_ - 1; }
    unsigned modulus_top_digit() const noexcept { return p_top_; }

private:
    unsigned base_;
    std::uint64_t p_;
    unsigned width_;
    unsigned p_top_;
};

/// Little-endian digits: index 0 is the least significant digit k_1, index
/// width-1 is the top digit k_{m+1}. Throws OutOfRange unless 0 <= k < p.
std::vector<unsigned> to_digits(std::uint64_t k, const RadixContext& ctx);

std::uint64_t from_digits(const std::vector<unsigned>& digits, unsigned base);

/// L_l(k): keeps the top digit and rotates the lower block by l positions
/// toward significance (negative l rotates the other way). A result that
/// reaches p is reduced mod p.
std::uint64_t cyclic_shift(std::uint64_t k, long long l, const RadixContext& ctx);

/// True when L_{-l}(L_l(k)) = k is guaranteed and some shift actually moves
/// k: top digit strictly below p's, lower block digits not all equal.
bool shiftable(std::uint64_t k, const RadixContext& ctx);

/// Number of distinct values L_l(k) != k for l in [1, m-1].
std::size_t distinct_masks(std::uint64_t k, const RadixContext& ctx);

} // namespace hierkey
