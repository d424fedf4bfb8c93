#pragma once

// Text serialization for certificates, tables and check reports. CSV uses
// ',' separators, '.' decimals and 17 significant digits; metadata goes in
// '#'-prefixed header lines.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvwerner/discord.hpp"
#include "cvwerner/separability.hpp"

namespace cvwerner {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Shortest form that round-trips: 17 significant digits.
std::string format_double(double v);

// "# key=value" per entry.
std::string metadata_header(const Metadata& metadata);

std::string table_to_csv(const Table& table, const Metadata& metadata, const Metadata& footer = {});
std::string table_to_json(const Table& table, const Metadata& metadata, const Metadata& footer = {});

std::string certificate_to_json(const SeparableDecomposition& decomposition, const Metadata& parameters);
SeparableDecomposition certificate_from_json(const std::string& text);

// Columns: lambda,n_levels,cutoff,s_global,s_local_b,s_cond_nvec,p_zero,discord_povm,discord_photon,delta
Table discord_table(const std::vector<DiscordReport>& reports);

std::string checks_to_text(const std::vector<CheckResult>& checks, const Metadata& metadata);
std::string checks_to_csv(const std::vector<CheckResult>& checks, const Metadata& metadata);
std::string checks_to_json(const std::vector<CheckResult>& checks, const Metadata& metadata);

}  // namespace cvwerner
