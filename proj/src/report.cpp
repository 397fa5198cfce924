#include "blurbench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "blurbench/error.hpp"
#include "blurbench/schedule.hpp"
#include "csv.hpp"

namespace blurbench {

namespace {

constexpr std::string_view kScoreHeader = "technique,level,score";

struct PendingRow {
    std::string technique;
    std::array<std::optional<double>, kLevelCount> scores;
    std::optional<double> with_blur;
    std::optional<double> no_blur;
};

std::string canonical_label(std::string_view name) {
    if (const auto t = technique_from_name(name)) return std::string(display_name(*t));
    return std::string(name);
}

// Canonical techniques first, in table order; unknown names keep their arrival order.
std::size_t technique_rank(const std::string& label) {
    for (std::size_t i = 0; i < kAllTechniques.size(); ++i) {
        if (label == display_name(kAllTechniques[i])) return i;
    }
    return kAllTechniques.size();
}

double parse_score(std::string_view text, const std::string& where) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw FormatError(where + ": score \"" + std::string(text) + "\" is not a number");
    }
    return value;
}

void set_once(std::optional<double>& slot, double value, const std::string& where) {
    if (slot) throw FormatError(where + ": duplicate score");
    slot = value;
}

std::string tenths_text(double value) { return format_tenths(to_tenths(value)); }

std::string markdown_row(std::initializer_list<std::string_view> cells) {
    std::string line = "|";
    for (auto cell : cells) {
        line += ' ';
        line += cell;
        line += " |";
    }
    return line + "\n";
}

const std::string kLevelTableHeader = "| Technique | MB0 | MB1 | MB2 | MB3 |\n| --- | ---: | ---: | ---: | ---: |\n";

}  // namespace

ScoreTable parse_score_table(std::string_view document) {
    constexpr std::string_view what = "scores";
    const auto rows = csv::read_rows(document);
    csv::expect_header(rows, {"technique", "level", "score"}, what);

    std::vector<PendingRow> pending;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = csv::location(what, row.line);
        if (row.fields.size() == 3 && row.fields[0] == "technique" && row.fields[1] == "level" &&
            row.fields[2] == "score") {
            continue;  // header of a concatenated document
        }
        if (row.fields.size() != 3) throw FormatError(where + ": expected 3 fields");
        if (row.fields[0].empty()) throw FormatError(where + ": empty technique");

        const std::string label = canonical_label(row.fields[0]);
        auto [it, inserted] = index.try_emplace(label, pending.size());
        if (inserted) pending.push_back(PendingRow{label, {}, {}, {}});
        PendingRow& target = pending[it->second];

        const double value = parse_score(row.fields[2], where);
        const std::string_view level = row.fields[1];
        if (const auto mb = level_from_token(level)) {
            set_once(target.scores[index_of(*mb)], value, where);
        } else if (level == "with_blur") {
            set_once(target.with_blur, value, where);
        } else if (level == "no_blur") {
            set_once(target.no_blur, value, where);
        } else {
            throw FormatError(where + ": unknown level \"" + std::string(level) + "\"");
        }
    }

    std::stable_sort(pending.begin(), pending.end(), [](const PendingRow& a, const PendingRow& b) {
        return technique_rank(a.technique) < technique_rank(b.technique);
    });

    ScoreTable table;
    for (auto& p : pending) {
        ScoreRow row{p.technique, {}, p.with_blur, p.no_blur};
        for (BlurLevel level : kAllLevels) {
            const auto& score = p.scores[index_of(level)];
            if (!score) {
                throw FormatError("scores: technique " + p.technique + " has no " + std::string(to_string(level)) +
                                  " score");
            }
            row.scores[index_of(level)] = *score;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::int64_t to_tenths(double value) noexcept { return std::llround(value * 10.0); }

std::string format_tenths(std::int64_t tenths) {
    const std::uint64_t magnitude = tenths < 0 ? 0 - static_cast<std::uint64_t>(tenths) : tenths;
    std::string out = tenths < 0 ? "-" : "";
    out += std::to_string(magnitude / 10);
    out += '.';
    out += static_cast<char>('0' + magnitude % 10);
    return out;
}

std::vector<DegradationDelta> degradation_deltas(const ScoreTable& table) {
    std::vector<DegradationDelta> deltas;
    deltas.reserve(table.rows.size() * kLevelCount);
    for (const auto& row : table.rows) {
        const std::int64_t baseline = to_tenths(row.score(BlurLevel::MB0));
        for (BlurLevel level : kAllLevels) {
            const std::int64_t diff = baseline - to_tenths(row.score(level));
            deltas.push_back({row.technique, level, static_cast<double>(diff) / 10.0});
        }
    }
    return deltas;
}

std::vector<std::string> monotonicity_warnings(const ScoreTable& table) {
    std::vector<std::string> warnings;
    for (const auto& row : table.rows) {
        for (std::size_t k = 1; k < kLevelCount; ++k) {
            const auto prev = to_tenths(row.scores[k - 1]);
            const auto cur = to_tenths(row.scores[k]);
            if (cur > prev) {
                warnings.push_back(row.technique + ": " + std::string(to_string(kAllLevels[k])) + " score " +
                                   format_tenths(cur) + " exceeds " + std::string(to_string(kAllLevels[k - 1])) +
                                   " score " + format_tenths(prev));
            }
        }
    }
    return warnings;
}

std::uint64_t FeatureHistogram::total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& [bin, count] : bins) sum += count;
    return sum;
}

std::vector<FeatureHistogram> build_histograms(std::span<const FeatureCountRecord> records,
                                               std::uint64_t bin_width) {
    if (bin_width == 0) throw ValidationError("histogram bin width must be >= 1");
    std::array<std::optional<FeatureHistogram>, kLevelCount> by_level;
    for (const auto& rec : records) {
        auto& hist = by_level[index_of(rec.level)];
        if (!hist) hist = FeatureHistogram{rec.level, bin_width, {}};
        ++hist->bins[rec.count / bin_width];
    }
    std::vector<FeatureHistogram> out;
    for (auto& hist : by_level) {
        if (hist) out.push_back(std::move(*hist));
    }
    return out;
}

double mean_feature_count(std::span<const FeatureCountRecord> records, BlurLevel level) {
    std::uint64_t sum = 0;
    std::uint64_t n = 0;
    for (const auto& rec : records) {
        if (rec.level != level) continue;
        sum += rec.count;
        ++n;
    }
    if (n == 0) throw ValidationError("no feature-count records at " + std::string(to_string(level)));
    return static_cast<double>(sum) / static_cast<double>(n);
}

std::optional<RenderFormat> render_format_from_name(std::string_view name) noexcept {
    if (name == "markdown" || name == "md") return RenderFormat::Markdown;
    if (name == "csv") return RenderFormat::Csv;
    return std::nullopt;
}

std::string render(const ScoreTable& table, RenderFormat format) {
    std::string out;
    if (format == RenderFormat::Csv) {
        out = std::string(kScoreHeader) + "\n";
        for (const auto& row : table.rows) {
            for (BlurLevel level : kAllLevels) {
                out += row.technique + "," + std::string(to_string(level)) + "," + tenths_text(row.score(level)) + "\n";
            }
            if (row.with_blur) out += row.technique + ",with_blur," + tenths_text(*row.with_blur) + "\n";
            if (row.no_blur) out += row.technique + ",no_blur," + tenths_text(*row.no_blur) + "\n";
        }
        return out;
    }
    out = kLevelTableHeader;
    for (const auto& row : table.rows) {
        out += markdown_row({row.technique, tenths_text(row.scores[0]), tenths_text(row.scores[1]),
                             tenths_text(row.scores[2]), tenths_text(row.scores[3])});
    }
    return out;
}

std::string render(std::span<const DegradationDelta> deltas, RenderFormat format) {
    if (format == RenderFormat::Csv) {
        std::string out = "technique,level,delta\n";
        for (const auto& d : deltas) {
            out += d.technique + "," + std::string(to_string(d.level)) + "," + tenths_text(d.delta) + "\n";
        }
        return out;
    }
    // Pivot to one line per technique, in order of first appearance.
    std::vector<std::pair<std::string, std::array<std::string, kLevelCount>>> lines;
    for (const auto& d : deltas) {
        auto it = std::find_if(lines.begin(), lines.end(), [&](const auto& l) { return l.first == d.technique; });
        if (it == lines.end()) {
            lines.push_back({d.technique, {"-", "-", "-", "-"}});
            it = std::prev(lines.end());
        }
        it->second[index_of(d.level)] = tenths_text(d.delta);
    }
    std::string out = kLevelTableHeader;
    for (const auto& [technique, cells] : lines) {
        out += markdown_row({technique, cells[0], cells[1], cells[2], cells[3]});
    }
    return out;
}

std::string render(std::span<const FeatureHistogram> histograms, RenderFormat format) {
    std::string out = format == RenderFormat::Csv ? "level,bin,min_count,max_count,images\n"
                                                  : "| Level | Bin | Region features | Images |\n| --- | ---: | --- | ---: |\n";
    for (const auto& hist : histograms) {
        for (const auto& [bin, images] : hist.bins) {
            const std::string lo = std::to_string(bin * hist.bin_width);
            const std::string hi = std::to_string((bin + 1) * hist.bin_width - 1);
            if (format == RenderFormat::Csv) {
                out += std::string(to_string(hist.level)) + "," + std::to_string(bin) + "," + lo + "," + hi + "," +
                       std::to_string(images) + "\n";
            } else {
                out += markdown_row({to_string(hist.level), std::to_string(bin), lo + "-" + hi, std::to_string(images)});
            }
        }
    }
    return out;
}

std::string render_blur_subsets(const ScoreTable& table, const BlurFlagAnnotation& flags, RenderFormat format) {
    std::size_t with_blur = 0;
    for (const auto& [id, flag] : flags.flags) with_blur += flag == BlurFlag::WithBlur;
    const std::size_t no_blur = flags.flags.size() - with_blur;

    std::string out;
    if (format == RenderFormat::Csv) {
        out = "technique,with_blur,no_blur\n";
    } else {
        out = "Images with blur: " + std::to_string(with_blur) + ", without blur: " + std::to_string(no_blur) + "\n\n";
        out += "| Technique | With blur | No blur |\n| --- | ---: | ---: |\n";
    }
    for (const auto& row : table.rows) {
        if (!row.with_blur || !row.no_blur) continue;
        if (format == RenderFormat::Csv) {
            out += row.technique + "," + tenths_text(*row.with_blur) + "," + tenths_text(*row.no_blur) + "\n";
        } else {
            out += markdown_row({row.technique, tenths_text(*row.with_blur), tenths_text(*row.no_blur)});
        }
    }
    return out;
}

ScoreTable scaled(ScoreTable table, double factor) {
    for (auto& row : table.rows) {
        for (double& s : row.scores) s *= factor;
        if (row.with_blur) *row.with_blur *= factor;
        if (row.no_blur) *row.no_blur *= factor;
    }
    return table;
}

}  // namespace blurbench
