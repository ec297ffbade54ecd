/*
 * Copyright (C) 2026 The hierkey Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 */
#include "hierkey/error.hpp"

namespace hierkey {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::DuplicateRoot: return "DuplicateRoot";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::DegreeTooLow: return "DegreeTooLow";
    case Errc::ScanBudgetExceeded: return "ScanBudgetExceeded";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::OffCurve: return "OffCurve";
    case Errc::InfinityPoint: return "InfinityPoint";
    case Errc::DegenerateEphemeral: return "DegenerateEphemeral";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::CycleCreated: return "CycleCreated";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::NotPredecessor: return "NotPredecessor";
    case Errc::RootCollision: return "RootCollision";
    case Errc::NotShiftable: return "NotShiftable";
    case Errc::NotARoot: return "NotARoot";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    }
    return "Unknown";
}

} // namespace hierkey
