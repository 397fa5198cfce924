#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blurbench/levels.hpp"

namespace blurbench {

/// Probability of training on each blur level. Entries lie in [0, 1] and sum to 1 within 1e-9.
class Schedule {
public:
    /// No-augmentation schedule [1, 0, 0, 0].
    Schedule() noexcept : probs_{1.0, 0.0, 0.0, 0.0} {}

    double probability(BlurLevel level) const noexcept { return probs_[index_of(level)]; }
    const std::array<double, kLevelCount>& probabilities() const noexcept { return probs_; }

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    friend Schedule validate_schedule(std::span<const double> probs);
    explicit Schedule(const std::array<double, kLevelCount>& probs) noexcept : probs_(probs) {}

    std::array<double, kLevelCount> probs_;
};

inline constexpr double kScheduleSumTolerance = 1e-9;

/// Throws ValidationError unless there are exactly four entries, none negative
/// or above 1, summing to 1 within kScheduleSumTolerance.
Schedule validate_schedule(std::span<const double> probs);

enum class Technique { NoAug, ObjDetAug, CapAug, ObjDetCapAug };

inline constexpr std::array<Technique, 4> kAllTechniques{
    Technique::NoAug, Technique::ObjDetAug, Technique::CapAug, Technique::ObjDetCapAug};

/// Identifier form: "NoAug", "ObjDetAug", ...
std::string_view to_string(Technique technique) noexcept;
/// Table label form: "No-Aug", "ObjDet-Aug", "Cap-Aug", "ObjDet-Cap-Aug".
std::string_view display_name(Technique technique) noexcept;
/// Accepts either form, case-sensitively.
std::optional<Technique> technique_from_name(std::string_view name) noexcept;

/// Which model's training data an assignment feeds.
enum class Stage : std::uint8_t { Detector = 0, Captioner = 1 };

std::string_view to_string(Stage stage) noexcept;
std::optional<Stage> stage_from_token(std::string_view token) noexcept;

struct TechniquePlan {
    Technique technique;
    Schedule detector;
    Schedule captioner;
};

/// Detector stage draws MB0/MB1/MB2 with 0.8/0.1/0.1 when augmented; the
/// captioner stage draws MB0..MB3 with 0.5/0.2/0.2/0.1 when augmented.
/// Stages that are not augmented always use MB0.
TechniquePlan technique_plan(Technique technique);

/// 64-bit digest of (key, seed): FNV-1a over the key bytes, xor'd with
/// splitmix64(seed), then passed through the splitmix64 finalizer.
std::uint64_t key_hash(std::string_view key, std::uint64_t seed) noexcept;

/// Top 53 bits of key_hash scaled into [0, 1).
double unit_draw(std::string_view key, std::uint64_t seed) noexcept;

/// Inverts the schedule CDF: the first level with non-zero probability whose
/// cumulative mass is >= u. A draw landing exactly on a boundary goes to the
/// lower level. Zero-probability levels are never returned.
BlurLevel level_for_draw(double u, const Schedule& schedule) noexcept;

/// level_for_draw(unit_draw(key, seed), schedule). Pure in its arguments.
BlurLevel sample_level(std::string_view key, const Schedule& schedule, std::uint64_t seed) noexcept;

/// Seed used for a stage's draws, so the two stages are sampled independently.
std::uint64_t stage_seed(std::uint64_t seed, Stage stage) noexcept;

struct ManifestEntry {
    std::string sample_key;
    Stage stage;
    BlurLevel level;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct AugmentationManifest {
    Technique technique = Technique::NoAug;
    std::uint64_t seed = 0;
    Schedule detector_schedule;
    Schedule captioner_schedule;
    /// One entry per (sample_key, stage), sorted by key bytes then stage.
    std::vector<ManifestEntry> entries;

    friend bool operator==(const AugmentationManifest&, const AugmentationManifest&) = default;
};

/// Assigns a level to every key at both stages. Throws ValidationError on duplicate keys.
AugmentationManifest plan_dataset(std::span<const std::string> sample_keys, Technique technique,
                                  std::uint64_t seed);

struct LevelFrequencies {
    std::array<std::size_t, kLevelCount> counts{};
    std::size_t total = 0;

    double fraction(BlurLevel level) const noexcept {
        return static_cast<double>(counts[index_of(level)]) / static_cast<double>(total);
    }
    std::array<double, kLevelCount> fractions() const noexcept;
};

/// Level counts for one stage. Throws ValidationError if the stage has no entries.
LevelFrequencies empirical_frequencies(const AugmentationManifest& manifest, Stage stage);

/// JSON-lines: a header object, then one object per entry.
std::string to_jsonl(const AugmentationManifest& manifest);
AugmentationManifest parse_manifest(std::string_view document);

}  // namespace blurbench
