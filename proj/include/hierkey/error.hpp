/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hierkey {

enum class Errc {
    InvalidParameter,
    NotInvertible,
    DuplicateRoot,
    ModulusMismatch,
    DegreeTooLow,
    ScanBudgetExceeded,
    OutOfRange,
    OffCurve,
    InfinityPoint,
    DegenerateEphemeral,
    UnknownClass,
    CycleCreated,
    DuplicateId,
    NotPredecessor,
    RootCollision,
    NotShiftable,
    NotARoot,
    DegreeMismatch,
    ParseError,
    VersionMismatch,
    SchemeMismatch,
};

std::string_view to_string(Errc code) noexcept;

/// Domain error carrying a machine-readable code. All library failures
/// surface as this type; the CLI maps it to exit status 1.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace hierkey
