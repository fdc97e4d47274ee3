#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotowave/simulator.hpp"

namespace rotowave::io {

/// Token written for undefined quantities.
inline constexpr const char* kMissing = "NA";

/// %.17g text, which round-trips binary64; signed zeros print as 0.
std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

/// Parses a field written by format_number; NA becomes nullopt.
std::optional<double> parse_number(const std::string& text);

/// Comma-separated, LF-terminated rows; no quoting (fields never contain commas).
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

void write_probe_csv(const std::filesystem::path& path, const std::vector<ProbeSample>& probe);
void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergySample>& energy);

/// Snapshot container ("RWSNAP01"), little-endian:
///   char[8] magic, u32 version (1), u32 n1, u32 n3, u32 field count (4),
///   u64 snapshot count, f64 L1, f64 L3, char[16] field names "v1,v2,v3,p",
/// then per snapshot: f64 t followed by v1, v2, v3, p, each n1*n3 f64 with
/// the x1 index fastest (element (i, j) at offset i + n1*j).
struct SnapshotFile {
  Grid grid;
  std::vector<FieldState> snapshots;
};

void write_snapshots(const std::filesystem::path& path, const Grid& grid,
                     const std::vector<FieldState>& snapshots);
SnapshotFile read_snapshots(const std::filesystem::path& path);

}  // namespace rotowave::io
