#pragma once

#include "isomet/harness.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace isomet {

struct AngularRecord {
    std::optional<std::string> timestamp;  // ISO-8601 when present
    double direction_degrees = 0.0;        // normalized into [0, 360)
};

struct AngularDataset {
    std::vector<AngularRecord> records;
    std::string source;
    int skipped_rows = 0;
};

struct IngestOptions {
    std::string column = "direction";
    std::string timestamp_column;  // empty: try "timestamp" then "ts"
    bool radians = false;          // input unit; stored values are degrees
    std::optional<int> hour;       // keep rows whose timestamp hour matches
    std::optional<std::string> date_from;  // inclusive, YYYY-MM-DD
    std::optional<std::string> date_to;    // inclusive
};

/// Reads an angular CSV (UTF-8, header row required, RFC-4180 quoting).
/// Invalid rows are skipped and counted in the result.
AngularDataset ingest_angles(const std::string& path, const IngestOptions& options = {});

void write_angles_csv(const AngularDataset& ds, std::ostream& out);

std::vector<Point> circle_points(const AngularDataset& ds);

/// Space-specific point encodings used by the CLI:
///   circle    "225deg" or "3.93rad"
///   bw        row-major rows split by ';': "a,b;b,c"
///   booklet   "z:x:y1,y2" ("z:x" when the page is empty)
///   euclidean comma list "c1,c2"
/// parse(format(p)) is lossless.
Point parse_point(const SpaceHandle& space, const std::string& text);
std::string format_point(const SpaceHandle& space, const Point& p);

/// One encoded point per line; '#' lines and blank lines are skipped.
std::vector<Point> read_points_file(const SpaceHandle& space, const std::string& path);

/// Shortest representation that round-trips through double.
std::string format_double(double x);

/// Sweep CSV with header
/// scenario,n,delta,rejection_rate,wilson_low,wilson_high,datasets,wall_seconds.
/// Timings are zeroed unless include_timings is set so that equal-seed runs
/// are byte-identical regardless of thread count.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out,
                     bool include_timings = false);

/// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
std::string fnv1a64_file_digest(const std::string& path);

const char* library_version();

}  // namespace isomet
