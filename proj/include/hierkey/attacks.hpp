/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include "hierkey/modmath.hpp"
#include "hierkey/radixshift.hpp"
#include "hierkey/schemes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hierkey {

/// Public shift data published next to a filter. When present the adversary
/// unmasks each candidate with L_{-l}, exactly as a legitimate predecessor
/// would.
struct PublicShift {
    RadixContext radix;
    unsigned shift;
};

enum class AttackKind { LinHsu, TripathyPaul };

std::string_view to_string(AttackKind kind) noexcept;

/// What the adversary saw and what it produced. Built from public data only;
/// `success` stays empty until a harness holding the true key judges it.
struct AttackReport {
    AttackKind kind;
    std::vector<std::uint64_t> old_coefficients; // transcript: ascending, as published
    std::vector<std::uint64_t> new_coefficients;
    std::optional<unsigned> shift_used;
    std::vector<std::uint64_t> candidate_roots;
    std::vector<std::uint64_t> candidate_keys; // parallel to candidate_roots
    bool degenerate = false;                   // difference polynomial vanished identically
    std::optional<bool> success;
};

/// Roots of new - old; each root rho yields the candidate old(rho).
/// Throws ScanBudgetExceeded for large p, ModulusMismatch.
AttackReport linhsu_attack(const Poly& old_filter, const Poly& new_filter,
                           const std::optional<PublicShift>& old_shift = std::nullopt);

/// Newly inserted root read off the two subleading coefficients,
/// c = old_{deg-1} - new_{deg}; the candidate key is new(c).
/// Throws DegreeMismatch unless deg new = deg old + 1 >= 3 with both monic:
/// a linear old filter's subleading coefficient is its masked constant term.
AttackReport tripathy_paul_attack(const Poly& old_filter, const Poly& new_filter,
                                  const std::optional<PublicShift>& new_shift = std::nullopt);

/// Runs an attack on one class across two published boards.
AttackReport attack_boards(AttackKind kind, const PublicBoard& before, const PublicBoard& after,
                           const ClassId& target);

/// Marks the report successful iff some candidate equals the true key.
void judge(AttackReport& report, std::uint64_t true_key);

} // namespace hierkey
