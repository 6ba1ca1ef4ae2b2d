#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "patternfront/params.hpp"

namespace patternfront {

/// Column-oriented numeric table written as CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// %.17g, with "nan"/"inf"/"-inf" spelled the same on every platform.
std::string format_double(double value);

/// Writes "# manifest_digest=<digest>" (when non-empty), a header row, and the
/// rows. Output is a pure function of the arguments.
void write_csv(std::ostream& out, const Table& table, const std::string& digest = {});
void write_csv_file(const std::string& path, const Table& table, const std::string& digest = {});

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a_hex(std::string_view data);

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one CLI invocation. The digest covers the subcommand, the
/// canonical parameters and the subcommand options, so identical inputs give
/// identical digests. The timestamp lives only in the manifest file.
struct RunManifest {
  std::string subcommand;
  std::string params_text;
  std::string options_text;
  std::string digest;
  std::vector<std::string> outputs;
  std::string version = kToolVersion;

  static RunManifest make(std::string subcommand, const ModelParams& params,
                          std::string options_text);
  nlohmann::json to_json(const std::string& timestamp) const;
};

nlohmann::json params_json(const ModelParams& params);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace patternfront
