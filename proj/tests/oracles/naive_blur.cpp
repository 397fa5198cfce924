#include "naive_blur.hpp"

#include <cmath>
#include <vector>

namespace blurbench::oracle {

namespace {

// Reflection through the periodic extension with period 2(n-1).
int mirror(int p, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    p %= period;
    if (p < 0) p += period;
    return p < n ? p : period - p;
}

}  // namespace

Image naive_blur(const Image& image, const BlurKernel& kernel) {
    const int w = image.width();
    const int h = image.height();
    const int ch = image.channels();
    std::vector<std::uint8_t> out(image.samples().size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                long sum = 0;
                for (int ky = 0; ky < kernel.tap_height(); ++ky) {
                    for (int kx = 0; kx < kernel.tap_width(); ++kx) {
                        const int sx = mirror(x + kx - kernel.anchor_x(), w);
                        const int sy = mirror(y + ky - kernel.anchor_y(), h);
                        sum += image.at(sx, sy, c);
                    }
                }
                const double mean = static_cast<double>(sum) / kernel.area();
                out[image.offset(x, y, c)] = static_cast<std::uint8_t>(std::floor(mean + 0.5));
            }
        }
    }
    return Image(w, h, ch, std::move(out));
}

}  // namespace blurbench::oracle
