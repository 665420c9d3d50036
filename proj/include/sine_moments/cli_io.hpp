#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sine_moments {

inline constexpr std::string_view kVersion = "1.0.0";

/// Shortest-safe round-trip form: 17 significant digits ("%.17g").
std::string format_real(double x);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Header plus rows, CRLF line endings.
  std::string render() const;
};

struct RunManifest {
  std::vector<std::string> argv;
  std::string command;
  std::map<std::string, std::string> config;
  std::string seed;  // empty when the command draws no random numbers
  std::map<std::string, std::string> tolerances;
  std::map<std::string, double> timings_seconds;
  std::string output_path;  // "-" for standard output
  std::string output_fnv1a64;
  std::size_t output_bytes = 0;
  std::map<std::string, std::string> summary;

  /// Canonical JSON: sorted keys, numbers as decimal strings.
  std::string to_json() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one subcommand. `args` excludes the program name. CSV goes to --out
/// (or `out`), diagnostics to `err`. Returns 0, 2 for usage errors or 3 for
/// numeric failures; 1 for I/O failures.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sine_moments
