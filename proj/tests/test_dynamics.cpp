/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/dynamics.hpp"
#include "hierkey/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hierkey;

namespace {

SchemeParams params_for(Scheme s, std::uint64_t p = 10007)
{
    SchemeParams params{s, Modulus(p), 10, std::nullopt};
    if (uses_curve(s)) {
        params.curve = CurveContext::generate(p);
    }
    return params;
}

std::vector<std::uint64_t> coeffs(const Poly& f)
{
    return {f.coefficients().begin(), f.coefficients().end()};
}

SecureFilter filter_of(const Modulus& m, const std::vector<std::uint64_t>& roots, std::uint64_t mask)
{
    return SecureFilter{"t", Scheme::Method1, Poly(m, oracle::expand(roots, mask, m.value())), 1, std::nullopt};
}

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::InvalidParameter;
}

bool derivations_hold(const KeyState& st)
{
    const Hierarchy& h = st.board.hierarchy;
    for (const auto& target : h.classes()) {
        for (const auto& viewer : h.strict_predecessors(target)) {
            if (derive_key(st.board, credentials_of(st, viewer), target) != st.secrets.at(target).key) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("extend and shrink agree with expansion from roots")
{
    const Modulus m(10007);
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<std::uint64_t> picked;
        const auto n = rng.uniform(1, 7) + 3;
        while (picked.size() < n) {
            picked.insert(rng.uniform(0, 10006));
        }
        std::vector<std::uint64_t> all(picked.begin(), picked.end());
        const std::uint64_t h_old = all[0];
        const std::uint64_t h_new = all[1];
        const std::uint64_t extra = all[2];
        const std::vector<std::uint64_t> rest(all.begin() + 3, all.end());
        const auto mask_old = rng.uniform(0, 10006);
        const auto mask_new = rng.uniform(0, 10006);

        auto with = [](std::vector<std::uint64_t> v, std::initializer_list<std::uint64_t> more) {
            v.insert(v.end(), more);
            return v;
        };
        const SecureFilter before = filter_of(m, with(rest, {h_old}), mask_old);
        const SecureFilter grown = extend_filter(before, h_old, h_new, extra, mask_old, mask_new);
        CHECK(coeffs(grown.poly) == oracle::expand(with(rest, {extra, h_new}), mask_new, 10007));

        const SecureFilter big = filter_of(m, with(rest, {extra, h_old}), mask_old);
        const SecureFilter shrunk = shrink_filter(big, h_old, h_new, extra, mask_old, mask_new);
        CHECK(coeffs(shrunk.poly) == oracle::expand(with(rest, {h_new}), mask_new, 10007));
    }
}

TEST_CASE("update algebra rejects non-roots and collisions")
{
    const Modulus m(23);
    const SecureFilter f = filter_of(m, {3, 5}, 7);
    CHECK(code_of([&] { shrink_filter(f, 3, 9, 4, 7, 1); }) == Errc::NotARoot);
    CHECK(code_of([&] { extend_filter(f, 4, 9, 11, 7, 1); }) == Errc::NotARoot);
    CHECK(code_of([&] { extend_filter(f, 3, 9, 5, 7, 1); }) == Errc::RootCollision);
    CHECK(code_of([&] { extend_filter(f, 3, 9, 9, 7, 1); }) == Errc::RootCollision);
}

TEST_CASE("plan replay strips the old mask once and adds the new one once")
{
    const Modulus m(23);
    FilterUpdatePlan plan{"t", Poly(m, oracle::expand({3, 5}, 7, 23)), 7, 2, {}, std::nullopt, false};
    plan.steps.push_back({FilterStep::Kind::DivideOut, 5});
    plan.steps.push_back({FilterStep::Kind::MultiplyIn, 9});
    plan.steps.push_back({FilterStep::Kind::MultiplyIn, 11});
    CHECK(coeffs(apply_plan(plan)) == oracle::expand({3, 9, 11}, 2, 23));
    plan.steps.push_back({FilterStep::Kind::DivideOut, 4});
    CHECK(code_of([&] { apply_plan(plan); }) == Errc::NotARoot);
}

TEST_CASE("insertion below the root touches one filter")
{
    for (Scheme s : {Scheme::Wu, Scheme::JengWang, Scheme::Method1, Scheme::Method2}) {
        CAPTURE(to_string(s));
        Rng rng(41);
        const KeyState st = generate_state(params_for(s, 99991), fixtures::five_classes(), 41, rng);
        const Mutation m = insert_class_dynamic(st, "u6", {"u1"}, {"u4"}, rng);
        CHECK(m.state.board.epoch == st.board.epoch + 1);
        CHECK(m.added == std::set<ClassId>{"u6"});
        CHECK(m.updated == std::set<ClassId>{"u4"});
        CHECK(m.state.board == rebuild_oracle(m.state));
        CHECK(derivations_hold(m.state));
        const int extra = uses_shift(s) ? 1 : 0;
        CHECK(m.state.board.at("u4").filter.degree() == 3 + extra);
        CHECK(m.state.board.at("u6").filter.degree() == 1 + extra);
        for (const auto& id : {"u1", "u2", "u3", "u5"}) {
            CHECK(m.state.board.at(id) == st.board.at(id));
        }
        if (uses_shift(s)) {
            CHECK(m.state.secrets.at("u4").mask_root != st.secrets.at("u4").mask_root);
        }
    }
}

TEST_CASE("removal shrinks successor filters")
{
    for (Scheme s : {Scheme::Wu, Scheme::JengWang, Scheme::Method1, Scheme::Method2}) {
        CAPTURE(to_string(s));
        Rng rng(42);
        const KeyState st = generate_state(params_for(s, 99991), fixtures::five_classes(), 42, rng);
        const Mutation m = remove_class_dynamic(st, "u3", rng);
        CHECK(m.removed == std::set<ClassId>{"u3"});
        CHECK(m.updated == std::set<ClassId>{"u5"});
        CHECK(m.state.secrets.classes.count("u3") == 0);
        CHECK(m.state.board.classes.count("u3") == 0);
        CHECK(m.state.board.at("u5").filter.degree() == st.board.at("u5").filter.degree() - 1);
        CHECK(m.state.board == rebuild_oracle(m.state));
        CHECK(derivations_hold(m.state));

        const Mutation top = remove_class_dynamic(st, "u1", rng);
        CHECK(top.updated == std::set<ClassId>{"u2", "u3", "u4", "u5"});
        CHECK(top.state.board.at("u2").filter.is_zero());
        CHECK(top.state.board == rebuild_oracle(top.state));
    }
}

TEST_CASE("schemes without incremental updates republish")
{
    for (Scheme s : {Scheme::Akl, Scheme::LinHsu}) {
        CAPTURE(to_string(s));
        Rng rng(43);
        const KeyState st = generate_state(params_for(s), fixtures::five_classes(), 43, rng);
        const Mutation m = insert_class_dynamic(st, "u6", {"u1"}, {"u4"}, rng);
        CHECK(m.state.board == rebuild_oracle(m.state));
        CHECK(derivations_hold(m.state));
        if (s == Scheme::LinHsu) {
            CHECK(m.state.board.salt != st.board.salt);
        }
    }
}

TEST_CASE("random mutation sequences stay equal to a rebuild")
{
    for (Scheme s : {Scheme::Akl, Scheme::Wu, Scheme::JengWang, Scheme::LinHsu, Scheme::Method1, Scheme::Method2}) {
        CAPTURE(to_string(s));
        Rng rng(44);
        KeyState st = generate_state(params_for(s), fixtures::random_dag(rng, 5), 44, rng);
        int next = 100;
        for (int step = 0; step < 15; ++step) {
            const auto ids = st.board.hierarchy.classes();
            Mutation m{st, {}, {}, {}};
            if (ids.size() > 2 && rng.chance(0.4)) {
                m = remove_class_dynamic(st, ids[rng.uniform(0, ids.size() - 1)], rng);
            } else {
                std::vector<ClassId> above, below;
                const auto order = st.board.hierarchy.topological_order();
                const auto cut = rng.uniform(0, order.size());
                for (std::size_t i = 0; i < order.size(); ++i) {
                    if (rng.chance(0.3)) {
                        (i < cut ? above : below).push_back(order[i]);
                    }
                }
                m = insert_class_dynamic(st, "n" + std::to_string(next++), above, below, rng);
            }
            CHECK(m.state.board.epoch == st.board.epoch + 1);
            CHECK(m.state.board == rebuild_oracle(m.state));
            CHECK(derivations_hold(m.state));
            st = m.state;
        }
    }
}
