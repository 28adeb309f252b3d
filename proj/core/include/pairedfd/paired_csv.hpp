#pragma once

// Paired CSV layout:
//
//   subject,condition,s_<loc1>,...,s_<locS>
//   A,0,1.5,NA,...
//   A,1,1.7,2.0,...
//
// Exactly one row per (subject, condition), condition in {0, 1}. Grid
// locations come from the header suffixes; `NA` marks a missing cell.
// Subjects keep the order of their first appearance.

#include <filesystem>
#include <iosfwd>

#include "pairedfd/fda.hpp"

namespace pairedfd {

inline constexpr const char* kMissingToken = "NA";

/// Throws SchemaError with the offending line and column.
PairedSample read_paired_csv(std::istream& in);
PairedSample read_paired_csv(const std::filesystem::path& path);

void write_paired_csv(std::ostream& out, const PairedSample& paired);
void write_paired_csv(const std::filesystem::path& path, const PairedSample& paired);

}  // namespace pairedfd
