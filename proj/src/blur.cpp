#include "blurbench/blur.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "blurbench/error.hpp"

namespace blurbench {

namespace {

// Mirror index into [0, size) without repeating the edge sample: -1 -> 1, size -> size-2.
int reflect_101(int pos, int size) noexcept {
    if (size == 1) return 0;
    while (pos < 0 || pos >= size) {
        if (pos < 0) pos = -pos;
        if (pos >= size) pos = 2 * size - 2 - pos;
    }
    return pos;
}

// Source index for each of the size + tap - 1 positions a sliding window visits.
std::vector<int> border_table(int size, int tap, int anchor) {
    std::vector<int> table(static_cast<std::size_t>(size + tap - 1));
    for (int i = 0; i < static_cast<int>(table.size()); ++i) table[i] = reflect_101(i - anchor, size);
    return table;
}

// Window mean rounded half up, exact for non-negative integer sums.
std::uint8_t rounded_mean(std::int32_t sum, std::int32_t area) noexcept {
    return static_cast<std::uint8_t>((2 * sum + area) / (2 * area));
}

}  // namespace

BlurKernel::BlurKernel(int tap_width, int tap_height)
    : tap_width_(tap_width), tap_height_(tap_height), anchor_x_(tap_width / 2), anchor_y_(tap_height / 2) {}

BlurKernel BlurKernel::box(int tap_width, int tap_height) {
    if (tap_width < 1 || tap_height < 1) {
        throw ValidationError("kernel taps must be >= 1, got " + std::to_string(tap_width) + "x" +
                              std::to_string(tap_height));
    }
    return BlurKernel(tap_width, tap_height);
}

BlurKernel make_kernel(BlurLevel level) {
    switch (level) {
        case BlurLevel::MB0: return BlurKernel::box(1, 1);
        case BlurLevel::MB1: return BlurKernel::box(6, 1);
        case BlurLevel::MB2: return BlurKernel::box(18, 6);
        case BlurLevel::MB3: return BlurKernel::box(45, 12);
    }
    throw ValidationError("unknown blur level");
}

Image apply_blur(const Image& image, const BlurKernel& kernel) {
    const int width = image.width();
    const int height = image.height();
    const int channels = image.channels();
    const int kw = kernel.tap_width();
    const int kh = kernel.tap_height();
    if (kw > width || kh > height) {
        throw DimensionError("kernel " + std::to_string(kw) + "x" + std::to_string(kh) +
                             " does not fit image " + std::to_string(width) + "x" + std::to_string(height));
    }
    if (kw == 1 && kh == 1) return image;

    const std::vector<int> xs = border_table(width, kw, kernel.anchor_x());
    const std::vector<int> ys = border_table(height, kh, kernel.anchor_y());
    const std::size_t row_len = static_cast<std::size_t>(width) * channels;
    const auto src = image.samples();

    // Horizontal pass: running window sums along each row.
    std::vector<std::int32_t> row_sums(static_cast<std::size_t>(height) * row_len);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* in = src.data() + y * row_len;
        std::int32_t* out = row_sums.data() + y * row_len;
        for (int c = 0; c < channels; ++c) {
            std::int32_t sum = 0;
            for (int i = 0; i < kw; ++i) sum += in[xs[i] * channels + c];
            out[c] = sum;
            for (int x = 1; x < width; ++x) {
                sum += in[xs[x + kw - 1] * channels + c] - in[xs[x - 1] * channels + c];
                out[x * channels + c] = sum;
            }
        }
    }

    // Vertical pass: a running sum of whole rows of horizontal sums.
    std::vector<std::uint8_t> result(src.size());
    std::vector<std::int32_t> acc(row_len, 0);
    for (int i = 0; i < kh; ++i) {
        const std::int32_t* row = row_sums.data() + ys[i] * row_len;
        for (std::size_t j = 0; j < row_len; ++j) acc[j] += row[j];
    }
    const std::int32_t area = kernel.area();
    for (int y = 0; y < height; ++y) {
        if (y > 0) {
            const std::int32_t* enter = row_sums.data() + ys[y + kh - 1] * row_len;
            const std::int32_t* leave = row_sums.data() + ys[y - 1] * row_len;
            for (std::size_t j = 0; j < row_len; ++j) acc[j] += enter[j] - leave[j];
        }
        std::uint8_t* out = result.data() + y * row_len;
        for (std::size_t j = 0; j < row_len; ++j) out[j] = rounded_mean(acc[j], area);
    }
    return Image(width, height, channels, std::move(result));
}

std::map<BlurLevel, Image> blur_variants(const Image& image) {
    const BlurKernel largest = make_kernel(BlurLevel::MB3);
    if (image.width() < largest.tap_width() || image.height() < largest.tap_height()) {
        throw DimensionError("image " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                             " is smaller than the MB3 kernel (45x12)");
    }
    std::map<BlurLevel, Image> variants;
    for (BlurLevel level : kAllLevels) variants.emplace(level, apply_blur(image, make_kernel(level)));
    return variants;
}

}  // namespace blurbench
