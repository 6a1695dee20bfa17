#pragma once

#include <filesystem>
#include <string>

#include "ntnsim/engine.hpp"

namespace ntnsim {

// Writes the six run outputs into dir: links.csv, sensing.csv, tracking.csv,
// confusion.json, cdf_sinr.csv, summary.json. Every value is a deterministic
// function of (config, seed) except the wall-clock field of summary.json.
void write_run_outputs(const RunSummary& summary, const SimConfig& cfg,
                       const std::filesystem::path& dir);

// Writes the sweep comparison table (one row per run, per-class medians).
void write_sweep_medians(const std::vector<RunSummary>& runs,
                         const std::filesystem::path& path);

struct ReportResult {
    std::string text;       // human-readable report
    bool valid = true;      // invariants hold
    bool gatePrecision = false; // precision >= 0.85
    bool gateAccuracy = false;  // accuracy >= 0.82
};

// Reads a completed run directory, validates cross-file invariants and
// returns the printable report. Missing files throw ConfigError; broken
// invariants throw DataError.
ReportResult report_run(const std::filesystem::path& dir);

} // namespace ntnsim
