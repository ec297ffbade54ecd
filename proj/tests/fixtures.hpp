/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include "hierkey/hierarchy.hpp"
#include "hierkey/rng.hpp"

#include <string>
#include <vector>

namespace fixtures {

/// u1 above u2 and u3; u2 above u4 and u5; u3 above u5.
inline hierkey::Hierarchy five_classes()
{
    hierkey::Hierarchy h;
    h = h.add_class("u1", {}, {});
    h = h.add_class("u2", {"u1"}, {});
    h = h.add_class("u3", {"u1"}, {});
    h = h.add_class("u4", {"u2"}, {});
    h = h.add_class("u5", {"u2", "u3"}, {});
    return h;
}

/// Random DAG on c0..c{n-1}: each edge ci -> cj (i < j) present with
/// probability `density`.
inline hierkey::Hierarchy random_dag(hierkey::Rng& rng, std::size_t n, double density = 0.4)
{
    hierkey::Hierarchy h;
    std::vector<std::string> ids;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::string> above;
        for (const auto& id : ids) {
            if (rng.chance(density)) {
                above.push_back(id);
            }
        }
        ids.push_back("c" + std::to_string(j));
        h = h.add_class(ids.back(), above, {});
    }
    return h;
}

} // namespace fixtures
