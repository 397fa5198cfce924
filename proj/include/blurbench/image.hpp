#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace blurbench {

/// 8-bit raster, row-major, channel-interleaved. Channels is 1 (gray) or 3 (RGB).
class Image {
public:
    /// Throws ValidationError if dimensions are not positive, channels is not 1 or 3,
    /// or the sample count differs from width * height * channels.
    Image(int width, int height, int channels, std::vector<std::uint8_t> samples);

    static Image filled(int width, int height, int channels, std::uint8_t value);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }
    std::span<std::uint8_t> samples() noexcept { return samples_; }

    std::size_t offset(int x, int y, int c) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }
    std::uint8_t at(int x, int y, int c) const noexcept { return samples_[offset(x, y, c)]; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_;
    int height_;
    int channels_;
    std::vector<std::uint8_t> samples_;
};

}  // namespace blurbench
