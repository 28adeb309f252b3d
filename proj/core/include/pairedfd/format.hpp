#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pairedfd {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_real(double x);

/// Parses a finite decimal literal, or a ratio "a/b" of two of them.
/// Returns nullopt unless the whole (trimmed) token is consumed.
std::optional<double> parse_real(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace pairedfd
