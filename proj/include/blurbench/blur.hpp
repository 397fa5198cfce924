#pragma once

#include <map>

#include "blurbench/image.hpp"
#include "blurbench/levels.hpp"

namespace blurbench {

/// Normalized box kernel. Every tap weighs exactly 1 / (tap_width * tap_height).
///
/// The anchor is the tap aligned with the output pixel; for even taps it sits
/// right of center (floor(tap / 2)), so a 6-wide kernel covers x-3 .. x+2.
class BlurKernel {
public:
    /// Box kernel with default anchors. Throws ValidationError for taps < 1.
    static BlurKernel box(int tap_width, int tap_height);

    int tap_width() const noexcept { return tap_width_; }
    int tap_height() const noexcept { return tap_height_; }
    int anchor_x() const noexcept { return anchor_x_; }
    int anchor_y() const noexcept { return anchor_y_; }

    /// Number of taps; the weight denominator.
    int area() const noexcept { return tap_width_ * tap_height_; }
    double weight() const noexcept { return 1.0 / area(); }

    friend bool operator==(const BlurKernel&, const BlurKernel&) = default;

private:
    BlurKernel(int tap_width, int tap_height);

    int tap_width_;
    int tap_height_;
    int anchor_x_;
    int anchor_y_;
};

/// MB0 -> 1x1, MB1 -> 6x1, MB2 -> 18x6, MB3 -> 45x12 (width x height).
BlurKernel make_kernel(BlurLevel level);

/// Box-filters every channel with a mirrored (reflect-101) border.
///
/// Window sums are exact integers and each output sample is the window mean
/// rounded half up. The implementation slides running sums horizontally and
/// then vertically, which costs O(1) per sample regardless of kernel size.
///
/// Throws DimensionError if the kernel is wider or taller than the image.
Image apply_blur(const Image& image, const BlurKernel& kernel);

/// All four intensity variants of one image; the MB0 entry is a copy of the input.
/// Throws DimensionError if the image is smaller than the MB3 kernel (45x12).
std::map<BlurLevel, Image> blur_variants(const Image& image);

}  // namespace blurbench
