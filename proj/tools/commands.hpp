#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blurbench/levels.hpp"
#include "run_config.hpp"

namespace blurbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Streams for the per-item summary and for warnings and errors.
struct Console {
    std::ostream& out;
    std::ostream& err;
};

struct BlurArgs {
    std::vector<std::filesystem::path> inputs;  ///< PGM/PPM files or directories of them
    std::vector<BlurLevel> levels{kAllLevels.begin(), kAllLevels.end()};
};

struct PlanArgs {
    std::filesystem::path keys;  ///< one sample key per line
};

struct ScoreArgs {
    std::filesystem::path dataset;
    std::filesystem::path predictions;
    std::optional<std::filesystem::path> flags;
};

struct ReportArgs {
    std::vector<std::filesystem::path> scores;
    std::filesystem::path feature_counts;
    std::optional<std::filesystem::path> flags;
};

/// Writes <out>/<stem>.<level>.<ext> for every input and level.
int cmd_blur(const BlurArgs& args, const RunConfig& cfg, Console console);

/// Writes <out>/manifest.jsonl.
int cmd_plan(const PlanArgs& args, const RunConfig& cfg, Console console);

/// Writes <out>/scores.csv with rows technique,level,score; with flags, adds
/// with_blur / no_blur rows scored on the MB0 predictions of each subset.
int cmd_score(const ScoreArgs& args, const RunConfig& cfg, Console console);

/// Writes scores, degradation and histogram tables (markdown and csv) into
/// <out>, plus the blur subset table when flags are given.
int cmd_report(const ReportArgs& args, const RunConfig& cfg, Console console);

/// Replaces `path` via a sibling temporary file and a rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace blurbench::cli
