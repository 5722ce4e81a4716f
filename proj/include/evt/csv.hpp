#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace evt::csv {

/// 17 significant digits, '.' separator; round-trips every double.
std::string format(double value);
std::string quote(std::string_view field);
std::string row(const std::vector<std::string>& fields);

/// Writes `content` to `path` through a temporary sibling file and an atomic
/// rename, so a failed run never leaves a partial file behind. The path "-"
/// writes to standard output.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace evt::csv
