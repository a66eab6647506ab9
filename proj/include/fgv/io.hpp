// CSV and checksum helpers shared by the tools.
#pragma once

#include "fgv/sequence.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fgv {

/// Parses an `n,value` CSV with a header row and consecutive indices from 1.
/// Values are read exactly ("p/q" or decimal); the result is exact.
Sequence read_sequence_csv(const std::filesystem::path& path, std::string label);
Sequence parse_sequence_csv(std::string_view text, std::string label);

/// `n,value` rows for indices 1..size(), full precision.
std::string sequence_csv(const Sequence& s, std::string_view value_column = "value");

/// Two-column float table with the given header names.
std::string pairs_csv(std::string_view x_name, std::string_view y_name,
                      const std::vector<std::pair<double, double>>& rows);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace fgv
