#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chanreg/run.hpp"

namespace chanreg::cli {

enum ExitCode : int { Success = 0, IoFailure = 1, BlowUp = 2, CheckFailure = 3 };

// ------------------------------------------------------------------ config

/// Parses "key = value" lines with '#' comments and validates the result.
/// Throws ParseError naming the offending key.
SolverConfig parse_config_text(const std::string& text);
SolverConfig parse_config(const std::string& path);
/// Every key, one per line, in a fixed order; parse(emit(c)) == c.
std::string emit_config(const SolverConfig& config);

// -------------------------------------------------------------- checkpoint

/// 8-byte magic, version byte, length-prefixed descriptor text, then one
/// block per field: length-prefixed descriptor and nx*ny*nz complex values
/// as little-endian doubles (real, imag).
std::string checkpoint_bytes(const ResumePoint& point);
ResumePoint checkpoint_from_bytes(const std::string& bytes);
void write_checkpoint(const std::string& path, const ResumePoint& point);
ResumePoint read_checkpoint(const std::string& path);

// --------------------------------------------------------------------- csv

const std::vector<std::string>& csv_columns();
std::string csv_text(const std::vector<DiagnosticsRecord>& records);
/// Reads the CSV columns back; fields outside the schema are left zero.
std::vector<DiagnosticsRecord> parse_csv(const std::string& text);

// ---------------------------------------------------------------- manifest

/// Git blob hash (sha1 of "blob <len>\0" + text), lowercase hex.
std::string git_blob_hash(const std::string& text);

struct Manifest {
    std::string config_text;
    std::string start_time;  // ISO 8601 UTC
    std::string end_time;
    std::vector<std::pair<std::string, std::string>> outputs;
    int exit_status = 0;
};
std::string manifest_json(const Manifest& m);
/// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

// ---------------------------------------------------------------- commands

int cmd_run(const SolverConfig& config, const std::string& out_dir, std::ostream& log);

struct VerifyOptions {
    std::uint64_t seed = 1;
    int nx = 16, ny = 16, nz = 9;  // base grid; the refined grid doubles it
    int count = 100;
    double cap = 100.0;
    bool reversed_minkowski = false;
};
int cmd_verify_inequalities(const VerifyOptions& options, const std::string& out_dir, std::ostream& log);

struct ConvergenceResult {
    double order = 0.0;             // Richardson estimate
    double exact_order = 0.0;       // from errors against the exact solution
    std::vector<double> differences;  // |u_dt - u_dt/2|, |u_dt/2 - u_dt/4|
    std::vector<double> exact_errors;
    bool inconclusive = false;
    bool pass = false;
};
ConvergenceResult convergence_study(const SolverConfig& base);
int cmd_convergence(const SolverConfig& base, std::ostream& log);

int cmd_report(const SolverConfig& config, const std::string& out_dir, std::ostream& log);

std::string utc_now();

} // namespace chanreg::cli
