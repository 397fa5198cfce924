#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "blurbench/error.hpp"
#include "commands.hpp"

using namespace blurbench;
using namespace blurbench::cli;

namespace {

ConfigLayer load_config_file(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::optional<std::string> seed_from_environment() {
    const char* value = std::getenv(kSeedEnvVar);
    return value ? std::optional<std::string>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motion-blur robustness toolkit: blur variants, augmentation manifests, CIDEr-D scoring, reports"};
    app.require_subcommand(1);

    ConfigLayer flags;
    std::string config_path;
    std::string format_name;
    app.add_option("--seed", flags.seed, "Sampling seed (default 0, or $BLURBENCH_SEED)");
    app.add_option("--config", config_path, "Flat key = value configuration file");
    app.add_option("--out", flags.out, "Output directory (default .)");
    app.add_option("--format", format_name, "Console rendering")->check(CLI::IsMember({"markdown", "csv"}));

    BlurArgs blur_args;
    std::vector<std::string> level_names;
    auto* blur = app.add_subcommand("blur", "Write MB0..MB3 variants of PGM/PPM images");
    blur->add_option("inputs", blur_args.inputs, "Image files or directories")->required();
    blur->add_option("--levels", level_names, "Levels to write (default MB0 MB1 MB2 MB3)")
        ->delimiter(',')
        ->check(CLI::IsMember({"MB0", "MB1", "MB2", "MB3"}));

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Assign blur levels to training samples for a technique");
    plan->add_option("--keys", plan_args.keys, "File with one sample key per line")->required();
    plan->add_option("--technique", flags.technique, "NoAug, ObjDetAug, CapAug or ObjDetCapAug");

    ScoreArgs score_args;
    std::string flags_path;
    auto* score = app.add_subcommand("score", "Corpus CIDEr-D per blur level");
    score->add_option("--dataset", score_args.dataset, "COCO-style caption JSON")->required();
    score->add_option("--predictions", score_args.predictions, "Prediction JSON array")->required();
    score->add_option("--technique", flags.technique, "Technique label for the output rows");
    score->add_option("--flags", flags_path, "Blur-flag CSV; adds with_blur / no_blur rows");
    score->add_option("--sigma", flags.cider_sigma, "Length-penalty width (default 6)");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "Score tables, degradation deltas and feature histograms");
    report->add_option("--scores", report_args.scores, "Score CSV(s) from `score`")->required();
    report->add_option("--features", report_args.feature_counts, "Feature-count CSV")->required();
    report->add_option("--flags", flags_path, "Blur-flag CSV; adds the subset table");
    report->add_option("--bin-width", flags.bin_width, "Histogram bin width (default 10)");
    report->add_option("--score-scale", flags.score_scale, "Multiply scores before reporting (e.g. 100)");

    for (auto* sub : {blur, plan, score, report}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        if (!format_name.empty()) flags.format = render_format_from_name(format_name);
        cfg = resolve(flags, load_config_file(config_path), seed_from_environment());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!flags_path.empty()) {
        score_args.flags = flags_path;
        report_args.flags = flags_path;
    }

    Console console{std::cout, std::cerr};
    if (*blur) {
        if (!level_names.empty()) {
            blur_args.levels.clear();
            for (const auto& name : level_names) blur_args.levels.push_back(*level_from_token(name));
        }
        return cmd_blur(blur_args, cfg, console);
    }
    if (*plan) return cmd_plan(plan_args, cfg, console);
    if (*score) return cmd_score(score_args, cfg, console);
    return cmd_report(report_args, cfg, console);
}
