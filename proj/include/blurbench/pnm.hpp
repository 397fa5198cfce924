#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blurbench/image.hpp"

namespace blurbench {

/// Binary netpbm flavors: P5 (grayscale) and P6 (RGB), maxval 255 only.
enum class PnmFormat { PGM, PPM };

/// Decodes a P5/P6 buffer. The header may contain '#' comments; exactly one
/// whitespace byte separates maxval from the samples, and the payload must be
/// exactly width * height * channels bytes.
Image load_image(std::span<const std::uint8_t> bytes, PnmFormat format);

/// Same as above, with the format taken from the magic number.
Image load_image(std::span<const std::uint8_t> bytes);

/// Encodes with the canonical header "P6\n<w> <h>\n255\n" (or P5).
/// Throws ValidationError when the channel count does not match the format.
std::vector<std::uint8_t> save_image(const Image& image, PnmFormat format);

/// PGM for one channel, PPM for three.
PnmFormat natural_format(const Image& image) noexcept;

}  // namespace blurbench
