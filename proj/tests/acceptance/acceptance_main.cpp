// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blurbench/blur.hpp"
#include "blurbench/cider.hpp"
#include "blurbench/ingest.hpp"
#include "blurbench/report.hpp"
#include "blurbench/schedule.hpp"
#include "oracles/cider_oracle.hpp"
#include "oracles/naive_blur.hpp"
#include "test_support.hpp"

#ifndef BLURBENCH_CLI_PATH
#error "BLURBENCH_CLI_PATH must name the blurbench executable"
#endif

namespace fs = std::filesystem;
using namespace blurbench;
using blurbench::testing::data_path;
using blurbench::testing::read_file;
using blurbench::testing::words_of;

namespace {

constexpr double kConvolutionBudgetSeconds = 10.0;
constexpr double kCiderTolerance = 1e-9;
constexpr double kFrequencyTolerance = 0.01;
constexpr std::size_t kScheduleKeys = 100000;
constexpr double kEndToEndBudgetSeconds = 30.0;

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Image random_image(std::mt19937& rng, int w, int h, int c) {
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h * c);
    for (auto& v : s) v = static_cast<std::uint8_t>(byte(rng));
    return Image(w, h, c, std::move(s));
}

Outcome convolution_oracle_equivalence() {
    std::mt19937 rng(20210619);
    std::uniform_int_distribution<int> width(45, 128), height(12, 128);
    int mismatches = 0;
    double fast_seconds = 0.0;
    const auto start = Clock::now();
    for (int i = 0; i < 100; ++i) {
        const Image img = random_image(rng, width(rng), height(rng), i % 2 == 0 ? 1 : 3);
        for (BlurLevel level : kAllLevels) {
            const auto kernel = make_kernel(level);
            const auto t0 = Clock::now();
            const Image fast = apply_blur(img, kernel);
            fast_seconds += seconds_since(t0);
            if (!(fast == oracle::naive_blur(img, kernel))) ++mismatches;
        }
    }
    const double total = seconds_since(start);
    std::ostringstream detail;
    detail << "400 image/kernel pairs, " << mismatches << " mismatches, fast path " << fast_seconds
           << " s, with naive reference " << total << " s (budget " << kConvolutionBudgetSeconds << " s)";
    return {mismatches == 0 && total < kConvolutionBudgetSeconds, detail.str()};
}

Outcome constant_preservation() {
    int failures = 0;
    int checks = 0;
    for (int channels : {1, 3}) {
        for (int value : {0, 1, 128, 254, 255}) {
            const Image flat = Image::filled(61, 37, channels, static_cast<std::uint8_t>(value));
            for (BlurLevel level : kAllLevels) {
                ++checks;
                if (!(apply_blur(flat, make_kernel(level)) == flat)) ++failures;
            }
        }
    }
    return {failures == 0, std::to_string(checks) + " constant images x kernels, " + std::to_string(failures) + " changed"};
}

struct Toy {
    Dataset dataset;
    PredictionSet predictions;
    oracle::Corpus corpus;
    std::vector<std::vector<TokenSeq>> references;
};

Toy load_toy() {
    Toy toy;
    toy.dataset = parse_captions(read_file(data_path("toy/captions.json")), "toy");
    toy.predictions = parse_predictions(read_file(data_path("toy/predictions.json")));
    for (const auto& image : toy.dataset.images) {
        std::vector<oracle::Words> words;
        std::vector<TokenSeq> tokens;
        for (const auto& caption : toy.dataset.references_for(image.image_id)) {
            words.push_back(words_of(caption));
            tokens.push_back(tokenize(caption));
        }
        toy.corpus.references.push_back(std::move(words));
        toy.references.push_back(std::move(tokens));
    }
    return toy;
}

Outcome cider_oracle_equivalence() {
    const Toy toy = load_toy();
    const IdfTable idf = build_idf(toy.dataset);
    bool five_refs = true;
    for (const auto& refs : toy.references) five_refs = five_refs && refs.size() == 5;
    double worst = 0.0;
    int candidates = 0;
    for (std::size_t i = 0; i < toy.dataset.images.size(); ++i) {
        for (BlurLevel level : {BlurLevel::MB0, BlurLevel::MB1}) {
            const std::string& caption = *toy.predictions.find(toy.dataset.images[i].image_id, level);
            const double scored = cider_d(tokenize(caption), toy.references[i], idf);
            const double direct = oracle::direct_cider_d(toy.corpus, words_of(caption), toy.corpus.references[i]);
            worst = std::max(worst, std::abs(scored - direct));
            ++candidates;
        }
    }
    std::ostringstream detail;
    detail << toy.dataset.size() << " images, " << candidates << " candidates, max |diff| " << worst << " (tol "
           << kCiderTolerance << ")";
    return {toy.dataset.size() == 10 && five_refs && candidates == 20 && worst <= kCiderTolerance, detail.str()};
}

Outcome cider_boundary_values() {
    const Toy toy = load_toy();
    const IdfTable idf = build_idf(toy.dataset);
    const TokenSeq sole = tokenize("double decker bus passing buildings");
    const NGramCounts sole_counts = ngram_counts(sole);
    bool idf_positive = true;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& [gram, count] : sole_counts[n - 1]) idf_positive = idf_positive && idf.idf(n, gram) > 0.0;
    }
    const double identical = cider_d(sole, std::vector<TokenSeq>{sole}, idf);
    const double disjoint = cider_d(tokenize("zebra giraffe elephant walrus"), toy.references[0], idf);
    std::ostringstream detail;
    detail.precision(17);
    detail << "identical " << identical << ", disjoint " << disjoint;
    return {idf_positive && std::abs(identical - 10.0) <= kCiderTolerance && disjoint == 0.0, detail.str()};
}

Outcome schedule_convergence() {
    std::vector<std::string> keys;
    keys.reserve(kScheduleKeys);
    for (std::size_t i = 0; i < kScheduleKeys; ++i) keys.push_back("sample-" + std::to_string(i));

    const auto manifest = plan_dataset(keys, Technique::ObjDetCapAug, 0);
    const auto captioner = empirical_frequencies(manifest, Stage::Captioner);
    const auto detector = empirical_frequencies(manifest, Stage::Detector);
    const std::array<double, 4> target{0.5, 0.2, 0.2, 0.1};
    double worst = 0.0;
    for (BlurLevel level : kAllLevels) {
        worst = std::max(worst, std::abs(captioner.fraction(level) - target[index_of(level)]));
    }
    const bool same_bytes = to_jsonl(manifest) == to_jsonl(plan_dataset(keys, Technique::ObjDetCapAug, 0));
    std::ostringstream detail;
    detail << "captioner max |freq - p| " << worst << " (tol " << kFrequencyTolerance << "), detector MB3 count "
           << detector.counts[3] << ", reruns byte-identical: " << (same_bytes ? "yes" : "no");
    return {worst <= kFrequencyTolerance && detector.counts[3] == 0 && same_bytes, detail.str()};
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string("\"") + BLURBENCH_CLI_PATH + "\" " + args + " >> \"" + log.string() + "\" 2>&1";
    return std::system(cmd.c_str());
}

std::string shell_arg(const fs::path& p) { return "\"" + p.string() + "\""; }

Outcome table1_reproduction() {
    const fs::path dir = fs::temp_directory_path() / "blurbench_acceptance_table1";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path log = dir / "log.txt";
    const int coco_rc = run_cli("--out " + shell_arg(dir / "coco") + " report --scores " +
                                    shell_arg(data_path("table1_coco_scores.csv")) + " --features " +
                                    shell_arg(data_path("toy/feature_counts.csv")),
                                log);
    const int vizwiz_rc = run_cli("--out " + shell_arg(dir / "vizwiz") + " report --scores " +
                                      shell_arg(data_path("table1_vizwiz_scores.csv")) + " --features " +
                                      shell_arg(data_path("toy/feature_counts.csv")) + " --flags " +
                                      shell_arg(data_path("toy/blur_flags.csv")),
                                  log);
    if (coco_rc != 0 || vizwiz_rc != 0) return {false, "report exited nonzero; see " + log.string()};

    const std::vector<std::string> coco_rows{
        "| No-Aug | 117.1 | 111.4 | 95.0 | 48.4 |", "| ObjDet-Aug | 116.6 | 114.6 | 111.7 | 100.2 |",
        "| Cap-Aug | 116.8 | 115.0 | 108.8 | 85.1 |", "| ObjDet-Cap-Aug | 117.4 | 116.0 | 113.4 | 105.7 |"};
    const std::vector<std::string> vizwiz_rows{
        "| No-Aug | 48.8 | 47.0 | 40.9 | 26.4 |", "| ObjDet-Aug | 48.9 | 48.1 | 45.6 | 39.5 |",
        "| Cap-Aug | 50.0 | 49.2 | 46.9 | 38.2 |", "| ObjDet-Cap-Aug | 50.3 | 49.9 | 48.1 | 43.5 |"};
    const std::vector<std::string> subset_rows{"| No-Aug | 47.2 | 53.0 |", "| ObjDet-Aug | 47.0 | 53.3 |",
                                               "| Cap-Aug | 49.0 | 53.2 |", "| ObjDet-Cap-Aug | 48.9 | 54.1 |"};
    int cells_missing = 0;
    const auto coco_md = read_file((dir / "coco/scores.md").string());
    const auto vizwiz_md = read_file((dir / "vizwiz/scores.md").string());
    const auto subset_md = read_file((dir / "vizwiz/blur_subsets.md").string());
    for (const auto& row : coco_rows) cells_missing += coco_md.find(row + "\n") == std::string::npos;
    for (const auto& row : vizwiz_rows) cells_missing += vizwiz_md.find(row + "\n") == std::string::npos;
    for (const auto& row : subset_rows) cells_missing += subset_md.find(row + "\n") == std::string::npos;

    const auto delta = [&](const std::string& dataset, const std::string& technique) {
        const auto table = parse_score_table(
            std::string("technique,level,score\n") + [&] {
                // degradation.csv shares the score table layout, with deltas in the value column.
                auto text = read_file((dir / dataset / "degradation.csv").string());
                return text.substr(text.find('\n') + 1);
            }());
        for (const auto& row : table.rows) {
            if (row.technique == technique) return row.score(BlurLevel::MB3);
        }
        return std::nan("");
    };
    const double d1 = delta("coco", "No-Aug"), d2 = delta("coco", "ObjDet-Cap-Aug");
    const double d3 = delta("vizwiz", "No-Aug"), d4 = delta("vizwiz", "ObjDet-Cap-Aug");
    const bool deltas_exact = d1 == 68.7 && d2 == 11.7 && d3 == 22.4 && d4 == 6.8;
    std::ostringstream detail;
    detail << "36 cells, " << cells_missing << " missing; MB3 deltas " << d1 << " / " << d2 << " (COCO), " << d3
           << " / " << d4 << " (VizWiz)";
    fs::remove_all(dir);
    return {cells_missing == 0 && deltas_exact, detail.str()};
}

Outcome histogram_conservation() {
    std::mt19937 rng(31);
    int violations = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FeatureCountRecord> records;
        std::array<std::uint64_t, 4> expected{};
        const int n = std::uniform_int_distribution<int>(1, 2000)(rng);
        for (int i = 0; i < n; ++i) {
            const BlurLevel level = kAllLevels[rng() % 4];
            records.push_back({std::to_string(i), level, rng() % 101});
            ++expected[index_of(level)];
        }
        for (const auto& hist : build_histograms(records, 1 + rng() % 20)) {
            violations += hist.total() != expected[index_of(hist.level)];
        }
    }
    const auto toy = parse_feature_counts(read_file(data_path("toy/feature_counts.csv")));
    std::array<double, 4> means{};
    for (BlurLevel level : kAllLevels) means[index_of(level)] = mean_feature_count(toy, level);
    const bool decreasing = means[0] > means[1] && means[1] > means[2] && means[2] > means[3];
    for (const auto& hist : build_histograms(toy)) violations += hist.total() != 10;
    std::ostringstream detail;
    detail << "50 random fixtures + toy, " << violations << " total mismatches; toy means " << means[0] << " > "
           << means[1] << " > " << means[2] << " > " << means[3];
    return {violations == 0 && decreasing, detail.str()};
}

Outcome ingest_round_trip() {
    const auto captions = parse_captions(read_file(data_path("toy/captions.json")), "toy");
    const auto predictions = parse_predictions(read_file(data_path("toy/predictions.json")));
    const auto counts = parse_feature_counts(read_file(data_path("toy/feature_counts.csv")));
    const auto flags = parse_blur_flags(read_file(data_path("toy/blur_flags.csv")));
    const bool captions_ok = parse_captions(serialize_captions(captions), "toy") == captions;
    const bool predictions_ok = parse_predictions(serialize_predictions(predictions)) == predictions;
    const bool counts_ok = parse_feature_counts(serialize_feature_counts(counts)) == counts;
    const bool flags_ok = parse_blur_flags(serialize_blur_flags(flags)) == flags;

    const auto with = filter_by_blur_flag(captions, flags, BlurFlag::WithBlur);
    const auto without = filter_by_blur_flag(captions, flags, BlurFlag::NoBlur);
    std::set<std::string> ids;
    bool disjoint = true;
    for (const auto& image : with.images) disjoint = ids.insert(image.image_id).second && disjoint;
    for (const auto& image : without.images) disjoint = ids.insert(image.image_id).second && disjoint;
    const bool exhaustive = ids.size() == captions.size();
    std::ostringstream detail;
    detail << "captions " << captions_ok << ", predictions " << predictions_ok << ", feature counts " << counts_ok
           << ", flags " << flags_ok << "; partition " << with.size() << " + " << without.size() << " of "
           << captions.size() << (disjoint ? ", disjoint" : ", OVERLAP");
    return {captions_ok && predictions_ok && counts_ok && flags_ok && disjoint && exhaustive, detail.str()};
}

// Every regular file under `root`, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().filename() != "log.txt") {
            files[fs::relative(entry.path(), root).string()] = read_file(entry.path().string());
        }
    }
    return files;
}

Outcome end_to_end_smoke() {
    const fs::path base = fs::temp_directory_path() / "blurbench_acceptance_e2e";
    fs::remove_all(base);
    const auto start = Clock::now();
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* name : {"run1", "run2"}) {
        const fs::path dir = base / name;
        fs::create_directories(dir);
        const fs::path log = dir / "log.txt";
        const std::string toy = data_path("toy");
        int rc = 0;
        rc |= run_cli("--out " + shell_arg(dir / "blur") + " blur " + shell_arg(toy + "/images"), log);
        rc |= run_cli("--seed 7 --out " + shell_arg(dir / "plan") + " plan --technique ObjDetCapAug --keys " +
                          shell_arg(toy + "/keys.txt"),
                      log);
        rc |= run_cli("--out " + shell_arg(dir / "score") + " score --technique ObjDetCapAug --dataset " +
                          shell_arg(toy + "/captions.json") + " --predictions " + shell_arg(toy + "/predictions.json") +
                          " --flags " + shell_arg(toy + "/blur_flags.csv"),
                      log);
        rc |= run_cli("--out " + shell_arg(dir / "report") + " report --score-scale 100 --scores " +
                          shell_arg(dir / "score/scores.csv") + " --features " + shell_arg(toy + "/feature_counts.csv") +
                          " --flags " + shell_arg(toy + "/blur_flags.csv"),
                      log);
        if (rc != 0) return {false, std::string(name) + ": a stage exited nonzero; see " + log.string()};
        runs.push_back(snapshot(dir));
    }
    const double elapsed = seconds_since(start);
    const bool identical = runs[0] == runs[1];
    const std::size_t files = runs[0].size();
    std::ostringstream detail;
    detail << files << " output files per run, byte-identical: " << (identical ? "yes" : "no") << ", " << elapsed
           << " s for both runs (budget " << kEndToEndBudgetSeconds << " s)";
    if (identical) fs::remove_all(base);
    return {identical && files == 40 + 1 + 1 + 11 && elapsed < kEndToEndBudgetSeconds, detail.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"convolution oracle equivalence", convolution_oracle_equivalence},
        {"constant preservation", constant_preservation},
        {"CIDEr-D oracle equivalence", cider_oracle_equivalence},
        {"CIDEr-D boundary values", cider_boundary_values},
        {"schedule convergence", schedule_convergence},
        {"Table 1 fixture reproduction", table1_reproduction},
        {"histogram conservation", histogram_conservation},
        {"ingest round trip", ingest_round_trip},
        {"end-to-end smoke", end_to_end_smoke},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failed += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << " -- " << outcome.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
