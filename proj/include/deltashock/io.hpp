#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace deltashock::io {

// 17 significant digits: lossless double -> text -> double round trip.
std::string fmt17(double value);

std::string csv_row(const std::vector<std::string>& cells);

// Writes bytes as-is (LF line endings, no translation).
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace deltashock::io
