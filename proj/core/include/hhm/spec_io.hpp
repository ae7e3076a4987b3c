#pragma once

#include "hhm/galg.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hhm {

/// A loaded algebra specification.
struct AlgebraSpec {
    PrimeField field;
    GroupPtr group;
    GradedAlgebraPtr algebra;
};

/// Parses the JSON algebra specification. Malformed input throws ParseError; a well-formed
/// spec describing an invalid object throws ValidationError.
AlgebraSpec parse_spec(std::string_view text);
AlgebraSpec load_spec(const std::filesystem::path& path);

/// {"order": n, "table": [[...]]}, 0-based, row = left factor.
FiniteGroup parse_cayley_table(std::string_view text);

} // namespace hhm
