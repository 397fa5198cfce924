#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "blurbench/cider.hpp"
#include "blurbench/report.hpp"

namespace blurbench::cli {

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr const char* kSeedEnvVar = "BLURBENCH_SEED";

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    std::string technique = "NoAug";
    std::string out = ".";
    std::uint64_t bin_width = kDefaultBinWidth;
    RenderFormat format = RenderFormat::Markdown;
    CiderConfig cider;
    double score_scale = 1.0;  ///< Multiplier applied to scores before reporting.
};

/// Values from one configuration source; unset fields defer to the next source.
struct ConfigLayer {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> technique;
    std::optional<std::string> out;
    std::optional<std::uint64_t> bin_width;
    std::optional<RenderFormat> format;
    std::optional<int> cider_max_n;
    std::optional<double> cider_sigma;
    std::optional<double> cider_scale;
    std::optional<double> score_scale;
};

/// Flat "key = value" text; '#' starts a comment. Keys mirror RunConfig:
/// seed, technique, out, bin_width, format, cider_max_n, cider_sigma,
/// cider_scale, score_scale. Throws FormatError on unknown keys or bad values.
ConfigLayer parse_config(std::string_view text);

std::uint64_t parse_seed(std::string_view text);

/// Command line over config file over the seed environment variable over defaults.
RunConfig resolve(const ConfigLayer& command_line, const ConfigLayer& config_file,
                  std::optional<std::string> env_seed);

}  // namespace blurbench::cli
