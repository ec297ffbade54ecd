/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include "hierkey/schemes.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hierkey {

inline constexpr int kFormatVersion = 1;

/// Public board as a JSON document with fields version, epoch, scheme,
/// params, classes, edges. Field order is fixed and large integers are
/// decimal strings, so equal boards serialize to identical bytes. A filter is
/// published as its coefficients a_0..a_{n-1} with the monic leading 1
/// omitted; the zero filter is `null`.
std::string serialize_board(const PublicBoard& board);
/// Throws ParseError (with the offending field or line/column) or
/// VersionMismatch.
PublicBoard parse_board(std::string_view text);

std::string serialize_secrets(const CaSecrets& secrets, Scheme scheme);
CaSecrets parse_secrets(std::string_view text);

void save_board(const std::filesystem::path& path, const PublicBoard& board);
PublicBoard load_board(const std::filesystem::path& path);

/// Written with owner-only permissions.
void save_secrets(const std::filesystem::path& path, const CaSecrets& secrets, Scheme scheme);
CaSecrets load_secrets(const std::filesystem::path& path);

struct ClassDelta {
    enum class Change { Added, Removed, Changed };
    ClassId id;
    Change change;
    std::vector<std::uint64_t> old_coefficients;
    std::vector<std::uint64_t> new_coefficients;
};

std::string_view to_string(ClassDelta::Change change) noexcept;

/// Classes whose published data differs between two epochs, in id order.
/// Throws SchemeMismatch / ModulusMismatch.
std::vector<ClassDelta> diff_epochs(const PublicBoard& older, const PublicBoard& newer);

/// The CA's state directory: board.json, ca_secrets.json and one board
/// snapshot per epoch under history/.
class StateStore {
public:
    explicit StateStore(std::filesystem::path home) : home_(std::move(home)) {}

    /// $HIERKEY_HOME, or ./hierkey-state when unset.
    static StateStore from_environment();

    const std::filesystem::path& home() const noexcept { return home_; }
    std::filesystem::path board_path() const { return home_ / "board.json"; }
    std::filesystem::path secrets_path() const { return home_ / "ca_secrets.json"; }
    std::filesystem::path snapshot_path(std::uint64_t epoch) const;

    bool exists() const;
    KeyState load() const;
    void save(const KeyState& state) const;
    PublicBoard load_epoch(std::uint64_t epoch) const;

private:
    std::filesystem::path home_;
};

} // namespace hierkey
