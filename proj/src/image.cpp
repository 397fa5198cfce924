#include "blurbench/image.hpp"

#include <string>

#include "blurbench/error.hpp"

namespace blurbench {

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
    if (channels != 1 && channels != 3) {
        throw ValidationError("image must have 1 or 3 channels, got " + std::to_string(channels));
    }
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    if (samples_.size() != expected) {
        throw ValidationError("image expects " + std::to_string(expected) + " samples, got " +
                              std::to_string(samples_.size()));
    }
}

Image Image::filled(int width, int height, int channels, std::uint8_t value) {
    const std::size_t n = width > 0 && height > 0 && channels > 0
                              ? static_cast<std::size_t>(width) * height * channels
                              : 0;
    return Image(width, height, channels, std::vector<std::uint8_t>(n, value));
}

}  // namespace blurbench
