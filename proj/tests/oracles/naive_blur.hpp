#pragma once

#include "blurbench/blur.hpp"
#include "blurbench/image.hpp"

namespace blurbench::oracle {

// Direct O(w*h*kw*kh) box filter: for every output sample, sum the kernel
// window with mirrored (reflect-101) coordinates and round the mean half up.
Image naive_blur(const Image& image, const BlurKernel& kernel);

}  // namespace blurbench::oracle
