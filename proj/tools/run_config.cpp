#include "run_config.hpp"

#include <charconv>
#include <string>

#include "blurbench/error.hpp"

namespace blurbench::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("config: bad value \"" + std::string(text) + "\" for " + std::string(key));
    }
    return value;
}

template <typename T>
T pick(const std::optional<T>& first, const std::optional<T>& second, T fallback) {
    if (first) return *first;
    if (second) return *second;
    return fallback;
}

}  // namespace

std::uint64_t parse_seed(std::string_view text) { return parse_number<std::uint64_t>(trim(text), "seed"); }

ConfigLayer parse_config(std::string_view text) {
    ConfigLayer layer;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "seed") {
            layer.seed = parse_number<std::uint64_t>(value, key);
        } else if (key == "technique") {
            layer.technique = std::string(value);
        } else if (key == "out") {
            layer.out = std::string(value);
        } else if (key == "bin_width") {
            layer.bin_width = parse_number<std::uint64_t>(value, key);
        } else if (key == "format") {
            layer.format = render_format_from_name(value);
            if (!layer.format) throw FormatError("config: format must be markdown or csv");
        } else if (key == "cider_max_n") {
            layer.cider_max_n = parse_number<int>(value, key);
        } else if (key == "cider_sigma") {
            layer.cider_sigma = parse_number<double>(value, key);
        } else if (key == "cider_scale") {
            layer.cider_scale = parse_number<double>(value, key);
        } else if (key == "score_scale") {
            layer.score_scale = parse_number<double>(value, key);
        } else {
            throw FormatError("config line " + std::to_string(line_no) + ": unknown key \"" + std::string(key) + "\"");
        }
    }
    return layer;
}

RunConfig resolve(const ConfigLayer& cl, const ConfigLayer& file, std::optional<std::string> env_seed) {
    RunConfig cfg;
    std::optional<std::uint64_t> env;
    if (env_seed && !trim(*env_seed).empty()) env = parse_seed(*env_seed);
    cfg.seed = pick(cl.seed, file.seed, env.value_or(kDefaultSeed));
    cfg.technique = pick(cl.technique, file.technique, cfg.technique);
    cfg.out = pick(cl.out, file.out, cfg.out);
    cfg.bin_width = pick(cl.bin_width, file.bin_width, cfg.bin_width);
    cfg.format = pick(cl.format, file.format, cfg.format);
    cfg.cider.max_n = pick(cl.cider_max_n, file.cider_max_n, cfg.cider.max_n);
    cfg.cider.sigma = pick(cl.cider_sigma, file.cider_sigma, cfg.cider.sigma);
    cfg.cider.scale = pick(cl.cider_scale, file.cider_scale, cfg.cider.scale);
    cfg.score_scale = pick(cl.score_scale, file.score_scale, cfg.score_scale);
    cfg.cider.validate();
    if (cfg.bin_width == 0) throw ValidationError("bin_width must be >= 1");
    return cfg;
}

}  // namespace blurbench::cli
