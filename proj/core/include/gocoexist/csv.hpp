#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gocoexist {

/// Shortest decimal form that parses back to the same double. NaN is written
/// as an empty field, infinities as `inf` / `-inf`.
std::string format_double(double v);

/// Inverse of format_double; empty field -> NaN. Throws DomainError on junk.
double parse_double(const std::string& field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ConfigError (key = name) if absent.
  std::size_t column(const std::string& name) const;
};

/// Minimal reader for the unquoted comma-separated files this library emits.
/// Blank lines and lines starting with '#' are skipped.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable read_csv(std::istream& in, const std::string& source_name);

/// Opens `path` for writing, throwing std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace gocoexist
