/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include "hierkey/schemes.hpp"

#include <optional>
#include <set>
#include <vector>

namespace hierkey {

struct FilterStep {
    enum class Kind { DivideOut, MultiplyIn };
    Kind kind;
    std::uint64_t root;
};

/// Incremental rewrite of one published filter. Replay strips the old mask,
/// runs the linear-factor passes in order, then adds the new mask; the mask
/// therefore changes exactly once.
struct FilterUpdatePlan {
    ClassId target;
    Poly old_filter;
    std::uint64_t old_mask = 0;
    std::uint64_t new_mask = 0;
    std::vector<FilterStep> steps;
    std::optional<unsigned> new_shift;
    /// The target lost its last predecessor; the result is the zero filter.
    bool clears = false;
};

/// Throws NotARoot when a DivideOut pass leaves a remainder.
Poly apply_plan(const FilterUpdatePlan& plan);

/// g = (x - new_root)·(x - new_h)·((f - old_mask)/(x - old_h)) + new_mask.
/// Throws NotARoot if old_h does not divide f - old_mask, RootCollision if
/// new_root or new_h would repeat a factor.
SecureFilter extend_filter(const SecureFilter& f, std::uint64_t old_h, std::uint64_t new_h, std::uint64_t new_root,
                           std::uint64_t old_mask, std::uint64_t new_mask);

/// g = (x - new_h)·((f - old_mask)/(x - removed_root)/(x - old_h)) + new_mask.
SecureFilter shrink_filter(const SecureFilter& f, std::uint64_t old_h, std::uint64_t new_h,
                           std::uint64_t removed_root, std::uint64_t old_mask, std::uint64_t new_mask);

/// Result of one CA mutation; the epoch has advanced by one.
struct Mutation {
    KeyState state;
    std::set<ClassId> updated; // pre-existing classes whose published data changed
    std::set<ClassId> added;
    std::set<ClassId> removed;
};

/// Enrolls `id` between `above` and `below` and rewrites the filter of every
/// class whose predecessor set grew, with fresh h and l for the shift
/// schemes. Lin-Hsu draws a new salt and recomputes every filter; Akl-Taylor
/// recomputes every exponent.
Mutation insert_class_dynamic(const KeyState& state, const ClassId& id, const std::vector<ClassId>& above,
                              const std::vector<ClassId>& below, Rng& rng,
                              std::optional<std::uint64_t> key = std::nullopt);

/// Drops `id` and its secrets and shrinks the filter of every class whose
/// predecessor set lost members.
Mutation remove_class_dynamic(const KeyState& state, const ClassId& id, Rng& rng);

/// Regenerates the whole public board from the CA store with the current h
/// and l values.
PublicBoard rebuild_oracle(const KeyState& state);

} // namespace hierkey
