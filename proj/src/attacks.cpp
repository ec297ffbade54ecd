/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/attacks.hpp"

#include "hierkey/error.hpp"

#include <algorithm>

namespace hierkey {

std::string_view to_string(AttackKind kind) noexcept
{
    return kind == AttackKind::LinHsu ? "linhsu" : "tp";
}

namespace {

std::uint64_t unmask(std::uint64_t value, const std::optional<PublicShift>& shift)
{
    if (!shift) {
        return value;
    }
    return cyclic_shift(value, -static_cast<long long>(shift->shift), shift->radix);
}

AttackReport start(AttackKind kind, const Poly& old_filter, const Poly& new_filter,
                   const std::optional<PublicShift>& shift)
{
    if (!(old_filter.modulus() == new_filter.modulus())) {
        throw Error(Errc::ModulusMismatch, "boards use different moduli");
    }
    AttackReport r{kind, {}, {}, {}, {}, {}, false, std::nullopt};
    r.old_coefficients.assign(old_filter.coefficients().begin(), old_filter.coefficients().end());
    r.new_coefficients.assign(new_filter.coefficients().begin(), new_filter.coefficients().end());
    if (shift) {
        r.shift_used = shift->shift;
    }
    return r;
}

} // namespace

AttackReport linhsu_attack(const Poly& old_filter, const Poly& new_filter, const std::optional<PublicShift>& old_shift)
{
    AttackReport report = start(AttackKind::LinHsu, old_filter, new_filter, old_shift);
    const RootScan scan = find_roots(poly_sub(new_filter, old_filter));
    if (scan.degenerate) {
        report.degenerate = true;
        return report;
    }
    const Modulus& p = old_filter.modulus();
    for (std::uint64_t rho : scan.roots) {
        report.candidate_roots.push_back(rho);
        report.candidate_keys.push_back(unmask(poly_eval(old_filter, Fp(p, rho)).value(), old_shift));
    }
    return report;
}

AttackReport tripathy_paul_attack(const Poly& old_filter, const Poly& new_filter,
                                  const std::optional<PublicShift>& new_shift)
{
    AttackReport report = start(AttackKind::TripathyPaul, old_filter, new_filter, new_shift);
    const int n = old_filter.degree();
    if (n < 2 || new_filter.degree() != n + 1 || !old_filter.is_monic() || !new_filter.is_monic()) {
        throw Error(Errc::DegreeMismatch, "need monic filters with deg new = deg old + 1 >= 3");
    }
    // For monic prod(x - c_j) the x^{deg-1} coefficient is -sum(c_j), so the
    // difference of the two subleading coefficients is the new root. With
    // deg old = 1 that coefficient is the constant term and carries the mask.
    const Fp old_sub = old_filter.coeff(static_cast<std::size_t>(n - 1));
    const Fp new_sub = new_filter.coeff(static_cast<std::size_t>(n));
    const Fp root = old_sub - new_sub;
    report.candidate_roots.push_back(root.value());
    report.candidate_keys.push_back(unmask(poly_eval(new_filter, root).value(), new_shift));
    return report;
}

AttackReport attack_boards(AttackKind kind, const PublicBoard& before, const PublicBoard& after,
                           const ClassId& target)
{
    if (before.scheme() != after.scheme()) {
        throw Error(Errc::SchemeMismatch, "boards use different schemes");
    }
    if (!uses_filters(before.scheme())) {
        throw Error(Errc::InvalidParameter, "Akl-Taylor boards carry no filters");
    }
    const PublicClass& old_pub = before.at(target);
    const PublicClass& new_pub = after.at(target);
    const bool shifted = uses_shift(before.scheme());
    if (kind == AttackKind::LinHsu) {
        std::optional<PublicShift> s;
        if (shifted) {
            s = PublicShift{before.params.radix(), *old_pub.shift};
        }
        return linhsu_attack(old_pub.filter, new_pub.filter, s);
    }
    std::optional<PublicShift> s;
    if (shifted) {
        s = PublicShift{after.params.radix(), *new_pub.shift};
    }
    return tripathy_paul_attack(old_pub.filter, new_pub.filter, s);
}

void judge(AttackReport& report, std::uint64_t true_key)
{
    report.success = std::find(report.candidate_keys.begin(), report.candidate_keys.end(), true_key) !=
                     report.candidate_keys.end();
}

} // namespace hierkey
