#include "blurbench/pnm.hpp"

#include <charconv>
#include <string>

#include "blurbench/error.hpp"

namespace blurbench {

namespace {

bool is_space(std::uint8_t b) noexcept {
    return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\v' || b == '\f';
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and comments, then reads one unsigned decimal token.
    int next_int(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') ++pos_;
        if (start == pos_) throw FormatError(std::string("pnm header: missing ") + what);
        if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
            throw FormatError(std::string("pnm header: malformed ") + what);
        }
        int value = 0;
        const auto* first = reinterpret_cast<const char*>(bytes_.data() + start);
        const auto* last = reinterpret_cast<const char*>(bytes_.data() + pos_);
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) throw FormatError(std::string("pnm header: ") + what + " out of range");
        return value;
    }

    // The single whitespace byte that ends the header.
    void end_of_header() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw FormatError("pnm header: expected whitespace after maxval");
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

PnmFormat detect_format(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        if (bytes[1] == '5') return PnmFormat::PGM;
        if (bytes[1] == '6') return PnmFormat::PPM;
    }
    throw FormatError("pnm: bad magic number (expected P5 or P6)");
}

}  // namespace

Image load_image(std::span<const std::uint8_t> bytes, PnmFormat format) {
    if (detect_format(bytes) != format) {
        throw FormatError(format == PnmFormat::PGM ? "pnm: expected P5 (PGM)" : "pnm: expected P6 (PPM)");
    }
    HeaderReader header(bytes);
    const int width = header.next_int("width");
    const int height = header.next_int("height");
    const int maxval = header.next_int("maxval");
    if (maxval != 255) throw FormatError("pnm: maxval must be 255, got " + std::to_string(maxval));
    if (width <= 0 || height <= 0) throw FormatError("pnm: dimensions must be positive");
    header.end_of_header();

    const int channels = format == PnmFormat::PGM ? 1 : 3;
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    const std::size_t available = bytes.size() - header.position();
    if (available < expected) {
        throw FormatError("pnm: truncated payload, expected " + std::to_string(expected) + " bytes, got " +
                          std::to_string(available));
    }
    if (available > expected) {
        throw FormatError("pnm: " + std::to_string(available - expected) + " trailing bytes after payload");
    }
    const auto payload = bytes.subspan(header.position());
    return Image(width, height, channels, std::vector<std::uint8_t>(payload.begin(), payload.end()));
}

Image load_image(std::span<const std::uint8_t> bytes) {
    return load_image(bytes, detect_format(bytes));
}

std::vector<std::uint8_t> save_image(const Image& image, PnmFormat format) {
    const int channels = format == PnmFormat::PGM ? 1 : 3;
    if (image.channels() != channels) {
        throw ValidationError("cannot encode a " + std::to_string(image.channels()) + "-channel image as " +
                              (format == PnmFormat::PGM ? "PGM" : "PPM"));
    }
    const std::string header = std::string(format == PnmFormat::PGM ? "P5" : "P6") + "\n" +
                               std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    const auto samples = image.samples();
    out.insert(out.end(), samples.begin(), samples.end());
    return out;
}

PnmFormat natural_format(const Image& image) noexcept {
    return image.channels() == 1 ? PnmFormat::PGM : PnmFormat::PPM;
}

}  // namespace blurbench
