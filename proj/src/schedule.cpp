#include "blurbench/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "blurbench/error.hpp"
#include "json.hpp"

namespace blurbench {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// splitmix64 finalizer (Steele, Lea, Flood).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Distinct salts keep detector and captioner draws for one key uncorrelated.
constexpr std::uint64_t kStageSalt[] = {0x6465746563746f72ULL, 0x63617074696f6e72ULL};

Schedule augmented_detector() {
    static const std::array<double, kLevelCount> probs{0.8, 0.1, 0.1, 0.0};
    return validate_schedule(probs);
}

Schedule augmented_captioner() {
    static const std::array<double, kLevelCount> probs{0.5, 0.2, 0.2, 0.1};
    return validate_schedule(probs);
}

nlohmann::json schedule_json(const Schedule& schedule) {
    const auto& p = schedule.probabilities();
    return nlohmann::json::array({p[0], p[1], p[2], p[3]});
}

Schedule schedule_from_json(const nlohmann::json& value) {
    if (!value.is_array()) throw FormatError("manifest: schedule must be an array");
    std::vector<double> probs;
    for (const auto& v : value) {
        if (!v.is_number()) throw FormatError("manifest: schedule entries must be numbers");
        probs.push_back(v.get<double>());
    }
    try {
        return validate_schedule(probs);
    } catch (const ValidationError& e) {
        throw FormatError(std::string("manifest: ") + e.what());
    }
}

}  // namespace

Schedule validate_schedule(std::span<const double> probs) {
    if (probs.size() != kLevelCount) {
        throw ValidationError("schedule needs 4 probabilities, got " + std::to_string(probs.size()));
    }
    std::array<double, kLevelCount> values{};
    double sum = 0.0;
    for (std::size_t i = 0; i < kLevelCount; ++i) {
        const double p = probs[i];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw ValidationError("schedule probability for MB" + std::to_string(i) + " must lie in [0, 1], got " +
                                  std::to_string(p));
        }
        values[i] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > kScheduleSumTolerance) {
        throw ValidationError("schedule probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
    return Schedule(values);
}

std::string_view to_string(Technique technique) noexcept {
    switch (technique) {
        case Technique::NoAug: return "NoAug";
        case Technique::ObjDetAug: return "ObjDetAug";
        case Technique::CapAug: return "CapAug";
        case Technique::ObjDetCapAug: return "ObjDetCapAug";
    }
    return "?";
}

std::string_view display_name(Technique technique) noexcept {
    switch (technique) {
        case Technique::NoAug: return "No-Aug";
        case Technique::ObjDetAug: return "ObjDet-Aug";
        case Technique::CapAug: return "Cap-Aug";
        case Technique::ObjDetCapAug: return "ObjDet-Cap-Aug";
    }
    return "?";
}

std::optional<Technique> technique_from_name(std::string_view name) noexcept {
    for (Technique t : kAllTechniques) {
        if (name == to_string(t) || name == display_name(t)) return t;
    }
    return std::nullopt;
}

std::string_view to_string(Stage stage) noexcept {
    return stage == Stage::Detector ? "detector" : "captioner";
}

std::optional<Stage> stage_from_token(std::string_view token) noexcept {
    if (token == "detector") return Stage::Detector;
    if (token == "captioner") return Stage::Captioner;
    return std::nullopt;
}

TechniquePlan technique_plan(Technique technique) {
    const bool detector = technique == Technique::ObjDetAug || technique == Technique::ObjDetCapAug;
    const bool captioner = technique == Technique::CapAug || technique == Technique::ObjDetCapAug;
    return TechniquePlan{technique, detector ? augmented_detector() : Schedule{},
                         captioner ? augmented_captioner() : Schedule{}};
}

std::uint64_t key_hash(std::string_view key, std::uint64_t seed) noexcept {
    std::uint64_t h = kFnvOffset;
    for (unsigned char byte : key) {
        h ^= byte;
        h *= kFnvPrime;
    }
    return mix64(h ^ mix64(seed));
}

double unit_draw(std::string_view key, std::uint64_t seed) noexcept {
    return static_cast<double>(key_hash(key, seed) >> 11) * 0x1.0p-53;
}

BlurLevel level_for_draw(double u, const Schedule& schedule) noexcept {
    const auto& probs = schedule.probabilities();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < kLevelCount; ++i) {
        if (probs[i] <= 0.0) continue;
        cumulative += probs[i];
        last_positive = i;
        if (u <= cumulative) return kAllLevels[i];
    }
    // Rounding can leave the total a hair under 1.
    return kAllLevels[last_positive];
}

BlurLevel sample_level(std::string_view key, const Schedule& schedule, std::uint64_t seed) noexcept {
    return level_for_draw(unit_draw(key, seed), schedule);
}

std::uint64_t stage_seed(std::uint64_t seed, Stage stage) noexcept {
    return mix64(seed ^ kStageSalt[static_cast<std::size_t>(stage)]);
}

AugmentationManifest plan_dataset(std::span<const std::string> sample_keys, Technique technique,
                                  std::uint64_t seed) {
    std::vector<std::string> keys(sample_keys.begin(), sample_keys.end());
    std::sort(keys.begin(), keys.end());
    if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
        throw ValidationError("duplicate sample key: " + *dup);
    }

    const TechniquePlan plan = technique_plan(technique);
    const std::uint64_t detector_seed = stage_seed(seed, Stage::Detector);
    const std::uint64_t captioner_seed = stage_seed(seed, Stage::Captioner);

    AugmentationManifest manifest;
    manifest.technique = technique;
    manifest.seed = seed;
    manifest.detector_schedule = plan.detector;
    manifest.captioner_schedule = plan.captioner;
    manifest.entries.reserve(keys.size() * 2);
    for (auto& key : keys) {
        const BlurLevel detector_level = sample_level(key, plan.detector, detector_seed);
        const BlurLevel captioner_level = sample_level(key, plan.captioner, captioner_seed);
        manifest.entries.push_back({key, Stage::Detector, detector_level});
        manifest.entries.push_back({std::move(key), Stage::Captioner, captioner_level});
    }
    return manifest;
}

std::array<double, kLevelCount> LevelFrequencies::fractions() const noexcept {
    std::array<double, kLevelCount> out{};
    for (BlurLevel level : kAllLevels) out[index_of(level)] = fraction(level);
    return out;
}

LevelFrequencies empirical_frequencies(const AugmentationManifest& manifest, Stage stage) {
    LevelFrequencies freq;
    for (const auto& entry : manifest.entries) {
        if (entry.stage != stage) continue;
        ++freq.counts[index_of(entry.level)];
        ++freq.total;
    }
    if (freq.total == 0) {
        throw ValidationError("manifest has no " + std::string(to_string(stage)) + " entries");
    }
    return freq;
}

std::string to_jsonl(const AugmentationManifest& manifest) {
    nlohmann::json header = {
        {"type", "header"},
        {"seed", manifest.seed},
        {"plan", to_string(manifest.technique)},
        {"detector_schedule", schedule_json(manifest.detector_schedule)},
        {"captioner_schedule", schedule_json(manifest.captioner_schedule)},
    };
    std::string out = header.dump() + "\n";
    for (const auto& entry : manifest.entries) {
        nlohmann::json line = {
            {"sample_key", entry.sample_key},
            {"stage", to_string(entry.stage)},
            {"level", to_string(entry.level)},
        };
        out += line.dump();
        out += '\n';
    }
    return out;
}

AugmentationManifest parse_manifest(std::string_view document) {
    AugmentationManifest manifest;
    bool have_header = false;
    std::set<std::pair<std::string, Stage>> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < document.size()) {
        std::size_t end = document.find('\n', start);
        if (end == std::string_view::npos) end = document.size();
        const std::string_view line = document.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError("manifest line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string where = "manifest line " + std::to_string(line_no);
        if (!obj.is_object()) throw FormatError(where + ": expected an object");

        if (!have_header) {
            if (obj.value("type", "") != "header") throw FormatError(where + ": expected header object");
            if (!obj.contains("seed") || !obj["seed"].is_number_unsigned()) {
                throw FormatError(where + ": header needs an unsigned seed");
            }
            const auto technique = technique_from_name(obj.value("plan", ""));
            if (!technique) throw FormatError(where + ": unknown plan");
            manifest.seed = obj["seed"].get<std::uint64_t>();
            manifest.technique = *technique;
            manifest.detector_schedule = schedule_from_json(obj.value("detector_schedule", nlohmann::json()));
            manifest.captioner_schedule = schedule_from_json(obj.value("captioner_schedule", nlohmann::json()));
            have_header = true;
            continue;
        }

        const auto key = obj.find("sample_key");
        if (key == obj.end() || !key->is_string()) throw FormatError(where + ": missing sample_key");
        const auto stage = stage_from_token(obj.value("stage", ""));
        if (!stage) throw FormatError(where + ": bad stage");
        const auto level = level_from_token(obj.value("level", ""));
        if (!level) throw FormatError(where + ": bad level");
        if (!seen.emplace(key->get<std::string>(), *stage).second) {
            throw FormatError(where + ": duplicate entry for " + key->get<std::string>());
        }
        manifest.entries.push_back({key->get<std::string>(), *stage, *level});
    }
    if (!have_header) throw FormatError("manifest: missing header");
    return manifest;
}

}  // namespace blurbench
