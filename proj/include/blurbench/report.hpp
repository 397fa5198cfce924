#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blurbench/ingest.hpp"
#include "blurbench/levels.hpp"

namespace blurbench {

struct ScoreRow {
    std::string technique;
    std::array<double, kLevelCount> scores{};
    std::optional<double> with_blur;
    std::optional<double> no_blur;

    double score(BlurLevel level) const noexcept { return scores[index_of(level)]; }
};

/// CIDEr-D per technique and blur level. Rows follow the canonical technique
/// order (No-Aug, ObjDet-Aug, Cap-Aug, ObjDet-Cap-Aug), then any other names
/// in order of first appearance.
struct ScoreTable {
    std::vector<ScoreRow> rows;
};

/// Parses "technique,level,score" rows; level is MB0..MB3, with_blur or no_blur.
/// Known technique names are normalized to their table labels. Several
/// documents may be concatenated, each with its own header.
/// Throws FormatError on bad rows, duplicates, or a technique missing a level.
ScoreTable parse_score_table(std::string_view document);

/// Score rounded to tenths, half away from zero. All reported figures go through this.
std::int64_t to_tenths(double value) noexcept;
std::string format_tenths(std::int64_t tenths);

struct DegradationDelta {
    std::string technique;
    BlurLevel level;
    double delta;  ///< Rounded MB0 score minus rounded score at `level`.
};

/// Four deltas per row, MB0 first (always 0). Differences are taken on the
/// 1-decimal values, so they match a printed table exactly.
std::vector<DegradationDelta> degradation_deltas(const ScoreTable& table);

/// One message per row and level where the score rises with blur intensity.
std::vector<std::string> monotonicity_warnings(const ScoreTable& table);

inline constexpr std::uint64_t kDefaultBinWidth = 10;

struct FeatureHistogram {
    BlurLevel level;
    std::uint64_t bin_width;
    /// bin index (count / bin_width) -> number of images
    std::map<std::uint64_t, std::uint64_t> bins;

    std::uint64_t total() const noexcept;
};

/// One histogram per level present, MB0 first. Throws ValidationError if bin_width is 0.
std::vector<FeatureHistogram> build_histograms(std::span<const FeatureCountRecord> records,
                                               std::uint64_t bin_width = kDefaultBinWidth);

/// Throws ValidationError if no record has `level`.
double mean_feature_count(std::span<const FeatureCountRecord> records, BlurLevel level);

enum class RenderFormat { Markdown, Csv };

std::optional<RenderFormat> render_format_from_name(std::string_view name) noexcept;

std::string render(const ScoreTable& table, RenderFormat format);
std::string render(std::span<const DegradationDelta> deltas, RenderFormat format);
std::string render(std::span<const FeatureHistogram> histograms, RenderFormat format);

/// With-blur / no-blur columns for rows that carry both, preceded (markdown)
/// by the image counts of each subset.
std::string render_blur_subsets(const ScoreTable& table, const BlurFlagAnnotation& flags,
                                RenderFormat format);

/// Every score multiplied by `factor` (e.g. 100 to express corpus CIDEr-D in table units).
ScoreTable scaled(ScoreTable table, double factor);

}  // namespace blurbench
