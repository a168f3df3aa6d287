#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psbound/hermitian.hpp"

namespace psbound {

enum class CheckStatus {
    Pass,
    Fail,
    PreconditionUnmet,  // a conditional statement's hypothesis is not met
    Inconclusive,       // evaluation impossible (e.g. propagated domain error)
    Informative,        // violation outside the covering theorem's hypotheses
};

const char* to_string(CheckStatus s);

/// Outcome of one inequality trial: lhs, rhs, margin = rhs - lhs, pass/fail
/// at the stated tolerance, plus optional seed and witness matrices so a
/// violated report can be replayed from the file alone.
struct CheckReport {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double tolerance = 0.0;
    bool passed = false;  // margin >= -tolerance and status == Pass
    CheckStatus status = CheckStatus::Fail;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, HermitianMatrix>> witness;
};

/// Builds a pass/fail report with margin = rhs - lhs.
CheckReport make_check(std::string label, double lhs, double rhs, double tolerance);

} // namespace psbound
