/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/hierarchy.hpp"

#include "hierkey/error.hpp"

#include <queue>

namespace hierkey {

namespace {

std::set<ClassId> reach(const std::map<ClassId, std::set<ClassId>>& adj, const ClassId& start)
{
    std::set<ClassId> seen;
    std::vector<ClassId> stack{start};
    while (!stack.empty()) {
        const ClassId cur = stack.back();
        stack.pop_back();
        for (const auto& next : adj.at(cur)) {
            if (seen.insert(next).second) {
                stack.push_back(next);
            }
        }
    }
    return seen;
}

} // namespace

void Hierarchy::require(const ClassId& id) const
{
    if (!contains(id)) {
        throw Error(Errc::UnknownClass, "no class '" + id + "'");
    }
}

std::vector<ClassId> Hierarchy::classes() const
{
    std::vector<ClassId> out;
    out.reserve(down_.size());
    for (const auto& [id, _] : down_) {
        out.push_back(id);
    }
    return out;
}

std::vector<std::pair<ClassId, ClassId>> Hierarchy::edges() const
{
    std::vector<std::pair<ClassId, ClassId>> out;
    for (const auto& [pred, succs] : down_) {
        for (const auto& s : succs) {
            out.emplace_back(pred, s);
        }
    }
    return out;
}

std::set<ClassId> Hierarchy::strict_predecessors(const ClassId& id) const
{
    require(id);
    return reach(up_, id);
}

std::set<ClassId> Hierarchy::strict_successors(const ClassId& id) const
{
    require(id);
    return reach(down_, id);
}

bool Hierarchy::is_strict_predecessor(const ClassId& predecessor, const ClassId& successor) const
{
    require(predecessor);
    return strict_predecessors(successor).count(predecessor) != 0;
}

bool Hierarchy::is_predecessor(const ClassId& upper, const ClassId& lower) const
{
    require(upper);
    require(lower);
    return upper == lower || is_strict_predecessor(upper, lower);
}

Hierarchy Hierarchy::add_class(const ClassId& id, const std::vector<ClassId>& above,
                               const std::vector<ClassId>& below) const
{
    if (contains(id)) {
        throw Error(Errc::DuplicateId, "class '" + id + "' already exists");
    }
    if (id.empty()) {
        throw Error(Errc::InvalidParameter, "class id must be non-empty");
    }
    for (const auto& a : above) {
        require(a);
    }
    for (const auto& b : below) {
        require(b);
    }
    // A cycle appears iff some class placed below is already at or above some
    // class placed above.
    for (const auto& a : above) {
        for (const auto& b : below) {
            if (a == b || is_strict_predecessor(b, a)) {
                throw Error(Errc::CycleCreated, "'" + b + "' is not below '" + a + "'");
            }
        }
    }
    Hierarchy next = *this;
    next.down_[id];
    next.up_[id];
    for (const auto& a : above) {
        next.down_[a].insert(id);
        next.up_[id].insert(a);
    }
    for (const auto& b : below) {
        next.down_[id].insert(b);
        next.up_[b].insert(id);
    }
    return next;
}

Hierarchy Hierarchy::add_edge(const ClassId& predecessor, const ClassId& successor) const
{
    require(predecessor);
    require(successor);
    if (predecessor == successor || is_strict_predecessor(successor, predecessor)) {
        throw Error(Errc::CycleCreated, "edge " + predecessor + " -> " + successor + " closes a cycle");
    }
    Hierarchy next = *this;
    next.down_[predecessor].insert(successor);
    next.up_[successor].insert(predecessor);
    return next;
}

Hierarchy::Removal Hierarchy::remove_class(const ClassId& id) const
{
    require(id);
    Removal out{*this, strict_successors(id)};
    Hierarchy& next = out.hierarchy;
    for (const auto& s : next.down_[id]) {
        next.up_[s].erase(id);
    }
    for (const auto& pr : next.up_[id]) {
        next.down_[pr].erase(id);
    }
    next.down_.erase(id);
    next.up_.erase(id);
    return out;
}

std::vector<ClassId> Hierarchy::topological_order() const
{
    std::map<ClassId, std::size_t> indegree;
    std::priority_queue<ClassId, std::vector<ClassId>, std::greater<>> ready;
    for (const auto& [id, preds] : up_) {
        indegree[id] = preds.size();
        if (preds.empty()) {
            ready.push(id);
        }
    }
    std::vector<ClassId> order;
    order.reserve(down_.size());
    while (!ready.empty()) {
        ClassId cur = ready.top();
        ready.pop();
        for (const auto& s : down_.at(cur)) {
            if (--indegree[s] == 0) {
                ready.push(s);
            }
        }
        order.push_back(std::move(cur));
    }
    return order;
}

} // namespace hierkey
