#include "patternfront/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "patternfront/errors.hpp"

namespace patternfront {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("Table::add_row: expected " + std::to_string(columns.size()) +
                                " values, got " + std::to_string(row.size()));
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0 into 0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const Table& table, const std::string& digest) {
  if (!digest.empty()) out << "# manifest_digest=" << digest << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Table& table, const std::string& digest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(out, table, digest);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

RunManifest RunManifest::make(std::string subcommand, const ModelParams& params,
                              std::string options_text) {
  RunManifest m;
  m.subcommand = std::move(subcommand);
  m.params_text = canonical_text(params);
  m.options_text = std::move(options_text);
  m.digest = fnv1a_hex(m.subcommand + "\n" + m.params_text + "\n" + m.options_text + "\n" +
                       m.version);
  return m;
}

nlohmann::json params_json(const ModelParams& p) {
  return {{"alpha0", p.alpha0()}, {"c0", p.c0()}, {"gamma", p.gamma()}, {"eps", p.eps()},
          {"q0", p.q0()},         {"x0", p.x0()}, {"kc", p.kc()}};
}

nlohmann::json RunManifest::to_json(const std::string& timestamp) const {
  return {{"subcommand", subcommand}, {"params", params_text}, {"options", options_text},
          {"digest", digest},         {"outputs", outputs},    {"version", version},
          {"timestamp", timestamp}};
}

}  // namespace patternfront
