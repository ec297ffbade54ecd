/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/dynamics.hpp"

#include "hierkey/error.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace hierkey {

Poly apply_plan(const FilterUpdatePlan& plan)
{
    const Modulus& p = plan.old_filter.modulus();
    if (plan.clears) {
        return Poly(p);
    }
    Poly cur = plan.old_filter.is_zero() ? Poly::constant(p, 1)
                                         : poly_add_constant(plan.old_filter, -Fp(p, plan.old_mask));
    for (const auto& step : plan.steps) {
        const Fp root(p, step.root);
        if (step.kind == FilterStep::Kind::MultiplyIn) {
            cur = poly_mul_linear(cur, root);
            continue;
        }
        auto div = poly_div_linear(cur, root);
        if (div.remainder.value() != 0) {
            throw Error(Errc::NotARoot, std::to_string(step.root) + " is not a root of the unmasked filter");
        }
        cur = std::move(div.quotient);
    }
    return poly_add_constant(cur, Fp(p, plan.new_mask));
}

namespace {

Poly unmask_divide(const Poly& f, std::uint64_t mask, std::uint64_t root)
{
    if (f.degree() < 1) {
        throw Error(Errc::DegreeTooLow, "filter too small to divide");
    }
    const Modulus& p = f.modulus();
    auto div = poly_div_linear(poly_add_constant(f, -Fp(p, mask)), Fp(p, root));
    if (div.remainder.value() != 0) {
        throw Error(Errc::NotARoot, std::to_string(root) + " is not a root of the unmasked filter");
    }
    return std::move(div.quotient);
}

void require_fresh(const Poly& core, std::uint64_t root)
{
    if (!core.is_zero() && core.degree() >= 1 && poly_eval(core, Fp(core.modulus(), root)).value() == 0) {
        throw Error(Errc::RootCollision, std::to_string(root) + " is already a root");
    }
}

} // namespace

SecureFilter extend_filter(const SecureFilter& f, std::uint64_t old_h, std::uint64_t new_h, std::uint64_t new_root,
                           std::uint64_t old_mask, std::uint64_t new_mask)
{
    const Modulus& p = f.poly.modulus();
    Poly core = unmask_divide(f.poly, old_mask, old_h);
    require_fresh(core, new_root);
    require_fresh(core, new_h);
    if (p.reduce(new_h) == p.reduce(new_root)) {
        throw Error(Errc::RootCollision, "new h equals the new root");
    }
    core = poly_mul_linear(core, Fp(p, new_h));
    core = poly_mul_linear(core, Fp(p, new_root));
    SecureFilter out = f;
    out.poly = poly_add_constant(core, Fp(p, new_mask));
    return out;
}

SecureFilter shrink_filter(const SecureFilter& f, std::uint64_t old_h, std::uint64_t new_h,
                           std::uint64_t removed_root, std::uint64_t old_mask, std::uint64_t new_mask)
{
    const Modulus& p = f.poly.modulus();
    Poly core = unmask_divide(f.poly, old_mask, removed_root);
    auto div = poly_div_linear(core, Fp(p, old_h));
    if (div.remainder.value() != 0) {
        throw Error(Errc::NotARoot, std::to_string(old_h) + " is not a root of the unmasked filter");
    }
    core = std::move(div.quotient);
    require_fresh(core, new_h);
    core = poly_mul_linear(core, Fp(p, new_h));
    SecureFilter out = f;
    out.poly = poly_add_constant(core, Fp(p, new_mask));
    return out;
}

namespace {

std::set<ClassId> minus(const std::set<ClassId>& a, const std::set<ClassId>& b)
{
    std::set<ClassId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

// Rewrites the filter of `target` in `next` given its predecessor sets before
// and after. Removed roots are evaluated against `prev`, where the departed
// classes still exist.
void incremental_update(const KeyState& prev, KeyState& next, const ClassId& target,
                        const std::set<ClassId>& old_preds, const std::set<ClassId>& new_preds, Rng& rng)
{
    const bool shifted = uses_shift(next.scheme());
    choose_mask(next, target, rng);

    FilterUpdatePlan plan{target, prev.board.at(target).filter, filter_mask(prev, target), filter_mask(next, target),
                          {}, next.board.at(target).shift, new_preds.empty()};
    if (!plan.old_filter.is_zero()) {
        if (shifted) {
            plan.steps.push_back({FilterStep::Kind::DivideOut, *prev.secrets.at(target).mask_root});
        }
        for (const auto& gone : minus(old_preds, new_preds)) {
            plan.steps.push_back(
                {FilterStep::Kind::DivideOut, evaluation_point(prev.board, prev.secrets.at(gone).secret, target)});
        }
    }
    const auto& base = plan.old_filter.is_zero() ? new_preds : minus(new_preds, old_preds);
    for (const auto& fresh : base) {
        plan.steps.push_back(
            {FilterStep::Kind::MultiplyIn, evaluation_point(next.board, next.secrets.at(fresh).secret, target)});
    }
    if (shifted) {
        plan.steps.push_back({FilterStep::Kind::MultiplyIn, *next.secrets.at(target).mask_root});
    }
    next.board.classes.at(target).filter = apply_plan(plan);
}

// Schemes whose published data is regenerated wholesale on every epoch.
void republish(Mutation& m, const KeyState& prev, Rng& rng)
{
    choose_salt(m.state, rng);
    publish_all(m.state);
    for (const auto& [id, pub] : m.state.board.classes) {
        auto it = prev.board.classes.find(id);
        if (it != prev.board.classes.end() && !(it->second == pub)) {
            m.updated.insert(id);
        }
    }
}

void bump_epoch(KeyState& s)
{
    ++s.board.epoch;
    s.secrets.epoch = s.board.epoch;
}

} // namespace

Mutation insert_class_dynamic(const KeyState& state, const ClassId& id, const std::vector<ClassId>& above,
                              const std::vector<ClassId>& below, Rng& rng, std::optional<std::uint64_t> key)
{
    Mutation m{state, {}, {id}, {}};
    KeyState& next = m.state;
    next.board.hierarchy = state.board.hierarchy.add_class(id, above, below);
    ClassRecord rec = enroll_class(state, id, rng, key);
    next.board.classes.emplace(id, std::move(rec.pub));
    next.secrets.classes.emplace(id, rec.secret);
    bump_epoch(next);

    if (state.scheme() == Scheme::Akl || state.scheme() == Scheme::LinHsu) {
        republish(m, state, rng);
        return m;
    }

    choose_mask(next, id, rng);
    next.board.classes.at(id).filter = build_filter(next, id).poly;
    for (const auto& s : state.board.hierarchy.classes()) {
        const auto old_preds = state.board.hierarchy.strict_predecessors(s);
        const auto new_preds = next.board.hierarchy.strict_predecessors(s);
        if (old_preds != new_preds) {
            incremental_update(state, next, s, old_preds, new_preds, rng);
            m.updated.insert(s);
        }
    }
    return m;
}

Mutation remove_class_dynamic(const KeyState& state, const ClassId& id, Rng& rng)
{
    Mutation m{state, {}, {}, {id}};
    KeyState& next = m.state;
    next.board.hierarchy = state.board.hierarchy.remove_class(id).hierarchy;
    next.board.classes.erase(id);
    next.secrets.classes.erase(id);
    bump_epoch(next);

    if (state.scheme() == Scheme::Akl || state.scheme() == Scheme::LinHsu) {
        republish(m, state, rng);
        return m;
    }

    for (const auto& s : next.board.hierarchy.classes()) {
        const auto old_preds = state.board.hierarchy.strict_predecessors(s);
        const auto new_preds = next.board.hierarchy.strict_predecessors(s);
        if (old_preds != new_preds) {
            incremental_update(state, next, s, old_preds, new_preds, rng);
            m.updated.insert(s);
        }
    }
    return m;
}

PublicBoard rebuild_oracle(const KeyState& state)
{
    KeyState copy = state;
    publish_all(copy);
    return copy.board;
}

} // namespace hierkey
