#include <doctest.h>

#include <random>
#include <string>

#include "blurbench/error.hpp"
#include "blurbench/pnm.hpp"

using namespace blurbench;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::size_t payload, std::uint8_t fill = 7) {
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), payload, fill);
    return out;
}

}  // namespace

TEST_CASE("P6 header with twelve payload bytes decodes to a 2x2 RGB image") {
    const auto img = load_image(bytes_of("P6 2 2 255\n", 12), PnmFormat::PPM);
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img.channels() == 3);
    CHECK(img.samples().size() == 12);
}

TEST_CASE("decoder errors") {
    CHECK_THROWS_AS(load_image(bytes_of("P6 2 2 255\n", 11), PnmFormat::PPM), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P6 2 2 255\n", 13), PnmFormat::PPM), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P3 2 2 255\n", 12)), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P6 2 2 65535\n", 24), PnmFormat::PPM), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P6 2 2 15\n", 12), PnmFormat::PPM), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P5 2 2 255\n", 4), PnmFormat::PPM), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P6 2", 0)), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P6 0 2 255\n", 0)), FormatError);
    CHECK_THROWS_AS(load_image(bytes_of("P6 2x 2 255\n", 12)), FormatError);
}

TEST_CASE("header comments and mixed whitespace are accepted") {
    const auto img = load_image(bytes_of("P5\n# made by hand\n3\t2 # size\n255\r", 6));
    CHECK(img.width() == 3);
    CHECK(img.height() == 2);
    CHECK(img.channels() == 1);
}

TEST_CASE("save then load is the identity, and canonical files survive load then save") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(1, 20), byte(0, 255);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = dim(rng), h = dim(rng), c = trial % 2 ? 3 : 1;
        std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h * c);
        for (auto& v : s) v = static_cast<std::uint8_t>(byte(rng));
        const Image img(w, h, c, s);
        const auto encoded = save_image(img, natural_format(img));
        CHECK(load_image(encoded) == img);
        CHECK(save_image(load_image(encoded), natural_format(img)) == encoded);
    }
}

TEST_CASE("channel count must match the target format") {
    CHECK_THROWS_AS(save_image(Image::filled(2, 2, 3, 0), PnmFormat::PGM), ValidationError);
    CHECK_THROWS_AS(save_image(Image::filled(2, 2, 1, 0), PnmFormat::PPM), ValidationError);
}
