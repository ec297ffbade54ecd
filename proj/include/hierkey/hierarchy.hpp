/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hierkey {

using ClassId = std::string;

/// The poset (S, <=) of security classes as a DAG. An edge pred -> succ means
/// succ < pred: the predecessor holds the higher clearance. Values are
/// immutable snapshots; mutations return a new hierarchy.
class Hierarchy {
public:
    Hierarchy() = default;

    bool contains(const ClassId& id) const { return down_.count(id) != 0; }
    std::size_t size() const noexcept { return down_.size(); }
    std::vector<ClassId> classes() const;
    /// (predecessor, successor) pairs of the covering edges as stored.
    std::vector<std::pair<ClassId, ClassId>> edges() const;

    /// S_i: every u_j with u_i < u_j, transitively.
    std::set<ClassId> strict_predecessors(const ClassId& id) const;
    /// Every u_s with u_s < u_i, transitively.
    std::set<ClassId> strict_successors(const ClassId& id) const;
    /// True iff successor < predecessor.
    bool is_strict_predecessor(const ClassId& predecessor, const ClassId& successor) const;
    /// u_lower <= u_upper.
    bool is_predecessor(const ClassId& upper, const ClassId& lower) const;

    /// Inserts `id` with edges from each class in `above` and to each class in
    /// `below`. Throws DuplicateId, UnknownClass, CycleCreated.
    Hierarchy add_class(const ClassId& id, const std::vector<ClassId>& above,
                        const std::vector<ClassId>& below) const;

    /// Adds a single edge predecessor -> successor. Throws CycleCreated.
    Hierarchy add_edge(const ClassId& predecessor, const ClassId& successor) const;

    struct Removal;
    /// Drops `id` and its edges without reconnecting its neighbours.
    Removal remove_class(const ClassId& id) const;

    /// Classes ordered so every predecessor precedes its successors; ties
    /// broken by id.
    std::vector<ClassId> topological_order() const;

    friend bool operator==(const Hierarchy&, const Hierarchy&) = default;

private:
    void require(const ClassId& id) const;

    std::map<ClassId, std::set<ClassId>> down_; // pred -> direct successors
    std::map<ClassId, std::set<ClassId>> up_;   // succ -> direct predecessors
};

struct Hierarchy::Removal {
    Hierarchy hierarchy;
    /// The strict successors of the removed class, whose predecessor sets shrank.
    std::set<ClassId> affected;
};

} // namespace hierkey
