#include "blurbench/levels.hpp"

namespace blurbench {

std::string_view to_string(BlurLevel level) noexcept {
    switch (level) {
        case BlurLevel::MB0: return "MB0";
        case BlurLevel::MB1: return "MB1";
        case BlurLevel::MB2: return "MB2";
        case BlurLevel::MB3: return "MB3";
    }
    return "MB?";
}

std::optional<BlurLevel> level_from_token(std::string_view token) noexcept {
    for (BlurLevel level : kAllLevels) {
        if (token == to_string(level)) return level;
    }
    return std::nullopt;
}

}  // namespace blurbench
