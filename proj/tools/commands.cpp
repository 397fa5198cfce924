#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "blurbench/blur.hpp"
#include "blurbench/cider.hpp"
#include "blurbench/error.hpp"
#include "blurbench/ingest.hpp"
#include "blurbench/pnm.hpp"
#include "blurbench/report.hpp"
#include "blurbench/schedule.hpp"

namespace fs = std::filesystem;

namespace blurbench::cli {

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_raster(const fs::path& path) {
    const auto ext = path.extension();
    return ext == ".pgm" || ext == ".ppm";
}

// Files are taken as given; directories contribute their *.pgm / *.ppm entries in name order.
std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs, std::ostream& err, bool& ok) {
    std::vector<fs::path> files;
    for (const auto& input : inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(input)) {
                if (entry.is_regular_file() && is_raster(entry.path())) found.push_back(entry.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(input, ec)) {
            files.push_back(input);
        } else {
            err << "error: " << input.string() << ": no such file or directory\n";
            ok = false;
        }
    }
    return files;
}

std::string shortest(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string technique_label(const std::string& name) {
    if (const auto t = technique_from_name(name)) return std::string(display_name(*t));
    return name;
}

fs::path output_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

void write_atomic(const fs::path& path, std::string_view contents) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw Error("short write to " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

int cmd_blur(const BlurArgs& args, const RunConfig& cfg, Console console) {
    bool ok = true;
    const auto files = expand_inputs(args.inputs, console.err, ok);
    if (files.empty()) {
        console.err << "warning: no PGM/PPM inputs found\n";
        return ok ? kExitOk : kExitFailure;
    }
    const fs::path out_dir = output_dir(cfg);
    std::size_t written = 0;
    for (const auto& file : files) {
        try {
            const std::string bytes = read_file(file);
            const Image image = load_image(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
            for (BlurLevel level : args.levels) {
                const auto k = make_kernel(level);
                if (k.tap_width() > image.width() || k.tap_height() > image.height()) {
                    throw DimensionError(std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                                         " image is smaller than the " + std::string(to_string(level)) + " kernel " +
                                         std::to_string(k.tap_width()) + "x" + std::to_string(k.tap_height()));
                }
            }
            for (BlurLevel level : args.levels) {
                const Image blurred = apply_blur(image, make_kernel(level));
                const auto encoded = save_image(blurred, natural_format(blurred));
                const fs::path target =
                    out_dir / (file.stem().string() + "." + std::string(to_string(level)) + file.extension().string());
                write_atomic(target, std::string_view(reinterpret_cast<const char*>(encoded.data()), encoded.size()));
                ++written;
            }
            console.out << file.filename().string() << ": " << image.width() << "x" << image.height() << "x"
                        << image.channels() << ", " << args.levels.size() << " variant(s)\n";
        } catch (const std::exception& e) {
            console.err << "error: " << file.string() << ": " << e.what() << "\n";
            ok = false;
        }
    }
    console.out << "blur: " << files.size() << " input(s), " << written << " file(s) written to "
                << out_dir.string() << "\n";
    return ok ? kExitOk : kExitFailure;
}

int cmd_plan(const PlanArgs& args, const RunConfig& cfg, Console console) {
    const auto technique = technique_from_name(cfg.technique);
    if (!technique) {
        console.err << "error: unknown technique \"" << cfg.technique
                    << "\" (expected NoAug, ObjDetAug, CapAug or ObjDetCapAug)\n";
        return kExitUsage;
    }
    try {
        std::vector<std::string> keys;
        std::istringstream in(read_file(args.keys));
        for (std::string line; std::getline(in, line);) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) keys.push_back(line);
        }
        const auto manifest = plan_dataset(keys, *technique, cfg.seed);
        const fs::path target = output_dir(cfg) / "manifest.jsonl";
        write_atomic(target, to_jsonl(manifest));

        console.out << "plan: " << to_string(*technique) << ", seed " << cfg.seed << ", " << keys.size()
                    << " key(s) -> " << target.string() << "\n";
        for (Stage stage : {Stage::Detector, Stage::Captioner}) {
            if (keys.empty()) break;
            const auto freq = empirical_frequencies(manifest, stage);
            console.out << "  " << to_string(stage) << ":";
            for (BlurLevel level : kAllLevels) console.out << " " << to_string(level) << "=" << freq.counts[index_of(level)];
            console.out << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        console.err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_score(const ScoreArgs& args, const RunConfig& cfg, Console console) {
    Dataset dataset;
    PredictionSet predictions;
    std::optional<BlurFlagAnnotation> flags;
    try {
        dataset = parse_captions(read_file(args.dataset), args.dataset.stem().string());
        predictions = parse_predictions(read_file(args.predictions));
        if (args.flags) flags = parse_blur_flags(read_file(*args.flags));
    } catch (const std::exception& e) {
        console.err << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    bool ok = true;
    std::set<std::string> known;
    for (const auto& image : dataset.images) known.insert(image.image_id);
    std::set<std::string> strays;
    for (const auto& [key, caption] : predictions.candidates()) {
        if (!known.contains(key.first)) strays.insert(key.first);
    }
    if (!strays.empty()) {
        console.err << "warning: " << strays.size() << " predicted image id(s) not in the dataset, ignored\n";
    }

    const std::string label = technique_label(cfg.technique);
    std::string csv = "technique,level,score\n";
    auto emit = [&](std::string_view level, double score) {
        csv += label + "," + std::string(level) + "," + shortest(score) + "\n";
        console.out << label << " " << level << ": " << shortest(score) << "\n";
    };

    for (BlurLevel level : predictions.levels()) {
        const auto missing = missing_predictions(predictions, dataset, level);
        if (!missing.empty()) {
            console.err << "error: " << missing.size() << " image(s) lack a " << to_string(level) << " prediction:";
            for (const auto& id : missing) console.err << " " << id;
            console.err << "\n";
            ok = false;
            continue;
        }
        emit(to_string(level), corpus_cider_d(predictions, dataset, level, cfg.cider));
    }

    if (flags) {
        try {
            for (BlurFlag flag : {BlurFlag::WithBlur, BlurFlag::NoBlur}) {
                const Dataset subset = filter_by_blur_flag(dataset, *flags, flag);
                if (subset.images.empty()) {
                    console.err << "warning: no images flagged " << to_string(flag) << "\n";
                    continue;
                }
                emit(to_string(flag), corpus_cider_d(predictions, subset, BlurLevel::MB0, cfg.cider));
            }
        } catch (const std::exception& e) {
            console.err << "error: blur subsets: " << e.what() << "\n";
            ok = false;
        }
    }

    try {
        write_atomic(output_dir(cfg) / "scores.csv", csv);
    } catch (const std::exception& e) {
        console.err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return ok ? kExitOk : kExitFailure;
}

int cmd_report(const ReportArgs& args, const RunConfig& cfg, Console console) {
    try {
        std::string scores_text;
        for (const auto& path : args.scores) scores_text += read_file(path);
        const ScoreTable table = scaled(parse_score_table(scores_text), cfg.score_scale);
        const auto records = parse_feature_counts(read_file(args.feature_counts));
        std::optional<BlurFlagAnnotation> flags;
        if (args.flags) flags = parse_blur_flags(read_file(*args.flags));

        const auto deltas = degradation_deltas(table);
        const auto histograms = build_histograms(records, cfg.bin_width);
        const std::span<const DegradationDelta> delta_view(deltas);
        const std::span<const FeatureHistogram> hist_view(histograms);

        for (const auto& warning : monotonicity_warnings(table)) console.err << "warning: " << warning << "\n";

        const fs::path dir = output_dir(cfg);
        write_atomic(dir / "scores.md", render(table, RenderFormat::Markdown));
        write_atomic(dir / "scores.csv", render(table, RenderFormat::Csv));
        write_atomic(dir / "degradation.md", render(delta_view, RenderFormat::Markdown));
        write_atomic(dir / "degradation.csv", render(delta_view, RenderFormat::Csv));
        write_atomic(dir / "histograms.md", render(hist_view, RenderFormat::Markdown));
        for (const auto& hist : histograms) {
            const std::span<const FeatureHistogram> one(&hist, 1);
            write_atomic(dir / ("histogram_" + std::string(to_string(hist.level)) + ".csv"),
                         render(one, RenderFormat::Csv));
        }
        if (flags) {
            write_atomic(dir / "blur_subsets.md", render_blur_subsets(table, *flags, RenderFormat::Markdown));
            write_atomic(dir / "blur_subsets.csv", render_blur_subsets(table, *flags, RenderFormat::Csv));
        }

        console.out << render(table, cfg.format) << "\n" << render(delta_view, cfg.format);
        for (const auto& hist : histograms) {
            console.out << "\n" << to_string(hist.level) << ": " << hist.total() << " image(s), mean "
                        << mean_feature_count(records, hist.level) << " region features";
        }
        if (!histograms.empty()) console.out << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        console.err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace blurbench::cli
