#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace casimir::app {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Header row, then one line per row with every value as %.8e.
std::string format_csv(const Table& table);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// `<stem>.meta.json` next to the CSV.
std::filesystem::path metadata_path(const std::filesystem::path& csv);

}  // namespace casimir::app
