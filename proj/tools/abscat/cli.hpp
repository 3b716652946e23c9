#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "abscat/phase_shift.hpp"

namespace abscat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitVerify = 4;

enum class Subcommand { phase, smatrix, xsec, figure, verify };

/// "v" or "start:stop:count".
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::xsec;
  double alpha = 0.5;
  double a = 1.0;
  std::string bc = "robin:1";
  std::string k = "1";
  bool log_k = true;
  std::string theta = "0.01:3.141592653589793:600";
  std::string m = "0";
  double tol = 1e-8;
  std::string out;  // empty: standard output
  int id = 0;
  std::string suite = "all";
};

/// Thrown for malformed arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GridSpec parse_grid(const std::string& text);
std::vector<double> expand_grid(const GridSpec& spec, bool log_spacing);
BoundaryCondition parse_bc(const std::string& text);
/// "m" or "m_lo:m_hi", inclusive.
std::vector<int> parse_m_range(const std::string& text);

/// Parses argv (without the program name) into a RunConfig. Throws
/// UsageError. Returns false when only help was requested.
bool parse_args(const std::vector<std::string>& args, RunConfig& config,
                std::ostream& out);

struct CsvTable {
  std::vector<std::string> metadata;  // written as "# <line>"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// CSV text: metadata, header, rows with 17 significant digits.
std::string render_csv(const CsvTable& table);

/// Writes render_csv(table) to path, or to `fallback` when path is empty.
/// Throws abscat::DomainError for an empty table (nothing is created) and
/// std::ios_base::failure on I/O errors.
void emit_csv(const CsvTable& table, const std::string& path,
              std::ostream& fallback);

/// Builds the table for a parsed configuration. verify fills `passed`.
CsvTable build_table(const RunConfig& config, bool& passed);

/// Full front end: parse, compute, write. Returns the process exit code and
/// prints one diagnostic line to err on failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace abscat::cli
