#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace blurbench {

/// Additional motion-blur intensity: none, low, medium, high.
enum class BlurLevel : std::uint8_t { MB0 = 0, MB1 = 1, MB2 = 2, MB3 = 3 };

inline constexpr std::size_t kLevelCount = 4;

inline constexpr std::array<BlurLevel, kLevelCount> kAllLevels{
    BlurLevel::MB0, BlurLevel::MB1, BlurLevel::MB2, BlurLevel::MB3};

constexpr std::size_t index_of(BlurLevel level) noexcept {
    return static_cast<std::size_t>(level);
}

std::string_view to_string(BlurLevel level) noexcept;

/// Parses "MB0".."MB3"; anything else yields nullopt.
std::optional<BlurLevel> level_from_token(std::string_view token) noexcept;

}  // namespace blurbench
