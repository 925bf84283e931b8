#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "mkpolar/analysis.hpp"
#include "mkpolar/channel.hpp"
#include "mkpolar/construction.hpp"

namespace mkpolar::cli {

enum class Format { Csv, Json };

Format parse_format(const std::string& text);

using Cell = std::variant<std::uint64_t, double, std::string>;

/// Tabular output with a fixed column order. JSON rows carry the same keys.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// N,R,ordering,sc_nodes,fast_nodes,r0,r1,spc,rep2,rep3a,rep3b,rep3c,reduction_pct
Report latency_report(const std::vector<LatencyRow>& rows);

/// ebn0_db,frames,frame_errors,bit_errors,fer,ber
Report simulation_report(const SimStats& stats);

void emit_report(const Report& report, Format format, std::ostream& os);

/// Throws std::runtime_error when the file cannot be written.
void write_report(const Report& report, Format format, const std::filesystem::path& path);

/// Key/value code description:
///
///   # comment
///   N = 6
///   K = 3
///   kernels = 2,3
///   frozen = 0,1,2
///
/// Frozen indices are written sorted. Unknown keys are ignored on read.
void write_spec(std::ostream& os, const CodeSpec& spec);
CodeSpec read_spec(std::istream& is);
CodeSpec read_spec_file(const std::filesystem::path& path);

/// Parses "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_snr_list(const std::string& text);

/// Entry point shared by the executable and the tests. Returns the process
/// exit status; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mkpolar::cli
