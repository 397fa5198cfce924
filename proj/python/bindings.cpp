#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>
#include <vector>

#include "blurbench/blur.hpp"
#include "blurbench/cider.hpp"
#include "blurbench/error.hpp"
#include "blurbench/ingest.hpp"
#include "blurbench/pnm.hpp"
#include "blurbench/report.hpp"
#include "blurbench/schedule.hpp"

namespace py = pybind11;
using namespace blurbench;

namespace {

using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

BlurLevel parse_level(const std::string& token) {
    if (auto level = level_from_token(token)) return *level;
    throw ValidationError("unknown blur level '" + token + "' (expected MB0..MB3)");
}

Technique parse_technique(const std::string& name) {
    if (auto technique = technique_from_name(name)) return *technique;
    throw ValidationError("unknown technique '" + name + "'");
}

RenderFormat parse_format(const std::string& name) {
    if (auto format = render_format_from_name(name)) return *format;
    throw ValidationError("unknown format '" + name + "' (expected markdown or csv)");
}

// (H, W) arrays are grayscale, (H, W, 3) arrays are RGB.
Image to_image(const ByteArray& array) {
    int channels = 1;
    if (array.ndim() == 3) {
        channels = static_cast<int>(array.shape(2));
    } else if (array.ndim() != 2) {
        throw DimensionError("expected an (H, W) or (H, W, 3) uint8 array");
    }
    const auto* data = array.data();
    return Image(static_cast<int>(array.shape(1)), static_cast<int>(array.shape(0)), channels,
                 std::vector<std::uint8_t>(data, data + array.size()));
}

ByteArray to_array(const Image& image) {
    std::vector<py::ssize_t> shape{image.height(), image.width()};
    if (image.channels() == 3) shape.push_back(3);
    ByteArray out(shape);
    std::copy(image.samples().begin(), image.samples().end(), out.mutable_data());
    return out;
}

std::string_view as_view(const py::bytes& data) {
    char* buffer = nullptr;
    py::ssize_t length = 0;
    PYBIND11_BYTES_AS_STRING_AND_SIZE(data.ptr(), &buffer, &length);
    return {buffer, static_cast<std::size_t>(length)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Motion-blur robustness toolkit: box blur, augmentation schedules, CIDEr-D and reports.";

    static py::exception<Error> error(m, "BlurbenchError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
    py::register_exception<FormatError>(m, "FormatError", error.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());

    m.attr("LEVELS") = py::make_tuple("MB0", "MB1", "MB2", "MB3");

    // imaging
    m.def(
        "kernel_shape",
        [](const std::string& level) {
            const auto kernel = make_kernel(parse_level(level));
            return py::make_tuple(kernel.tap_width(), kernel.tap_height());
        },
        py::arg("level"), "(width, height) of the box kernel for a blur level.");
    m.def(
        "blur", [](const ByteArray& image, const std::string& level) {
            return to_array(apply_blur(to_image(image), make_kernel(parse_level(level))));
        },
        py::arg("image"), py::arg("level"), "Box-blur an (H, W) or (H, W, 3) uint8 array at one level.");
    m.def(
        "blur_variants",
        [](const ByteArray& image) {
            py::dict out;
            for (const auto& [level, blurred] : blur_variants(to_image(image))) {
                out[py::str(std::string(to_string(level)))] = to_array(blurred);
            }
            return out;
        },
        py::arg("image"), "All four blur levels of an image, keyed MB0..MB3.");
    m.def(
        "load_pnm",
        [](const py::bytes& data) {
            const auto view = as_view(data);
            return to_array(load_image(std::span(reinterpret_cast<const std::uint8_t*>(view.data()), view.size())));
        },
        py::arg("data"), "Decode binary PGM (P5) or PPM (P6) bytes.");
    m.def(
        "save_pnm",
        [](const ByteArray& image) {
            const Image img = to_image(image);
            const auto bytes = save_image(img, natural_format(img));
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("image"), "Encode an array as PGM (grayscale) or PPM (RGB) bytes.");

    // schedule
    m.def(
        "sample_level",
        [](const std::string& key, const std::vector<double>& probabilities, std::uint64_t seed) {
            return std::string(to_string(sample_level(key, validate_schedule(probabilities), seed)));
        },
        py::arg("key"), py::arg("probabilities"), py::arg("seed") = 0,
        "Deterministic blur level for a sample key under a four-entry schedule.");
    m.def(
        "plan",
        [](const std::vector<std::string>& keys, const std::string& technique, std::uint64_t seed) {
            return to_jsonl(plan_dataset(keys, parse_technique(technique), seed));
        },
        py::arg("keys"), py::arg("technique"), py::arg("seed") = 0,
        "Augmentation manifest for a list of sample keys, as JSON lines.");
    m.def(
        "level_frequencies",
        [](const std::string& manifest_jsonl, const std::string& stage) {
            const auto parsed_stage = stage_from_token(stage);
            if (!parsed_stage) throw ValidationError("unknown stage '" + stage + "'");
            const auto freq = empirical_frequencies(parse_manifest(manifest_jsonl), *parsed_stage);
            py::dict out;
            for (BlurLevel level : kAllLevels) out[py::str(std::string(to_string(level)))] = freq.fraction(level);
            return out;
        },
        py::arg("manifest"), py::arg("stage"), "Fraction of manifest entries at each level for one stage.");

    // metric
    m.def(
        "tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
    m.def(
        "cider_d",
        [](const std::string& candidate, const std::vector<std::string>& references,
           const std::vector<std::vector<std::string>>& corpus, double sigma) {
            std::vector<std::vector<TokenSeq>> tokenized;
            for (const auto& refs : corpus) {
                auto& set = tokenized.emplace_back();
                for (const auto& ref : refs) set.push_back(tokenize(ref));
            }
            std::vector<TokenSeq> ref_tokens;
            for (const auto& ref : references) ref_tokens.push_back(tokenize(ref));
            CiderConfig cfg;
            cfg.sigma = sigma;
            return cider_d(tokenize(candidate), ref_tokens, build_idf(tokenized), cfg);
        },
        py::arg("candidate"), py::arg("references"), py::arg("corpus"), py::arg("sigma") = 6.0,
        "CIDEr-D of one caption; idf comes from `corpus`, a list of per-image reference lists.");
    m.def(
        "corpus_cider_d",
        [](const std::string& captions_json, const std::string& predictions_json, const std::string& level) {
            return corpus_cider_d(parse_predictions(predictions_json), parse_captions(captions_json),
                                  parse_level(level));
        },
        py::arg("captions_json"), py::arg("predictions_json"), py::arg("level"),
        "Mean CIDEr-D of the predictions at one level over a COCO-style captions file.");

    // report
    m.def(
        "render_scores",
        [](const std::string& scores_csv, const std::string& format) {
            return render(parse_score_table(scores_csv), parse_format(format));
        },
        py::arg("scores_csv"), py::arg("format") = "markdown");
    m.def(
        "render_degradation",
        [](const std::string& scores_csv, const std::string& format) {
            const auto deltas = degradation_deltas(parse_score_table(scores_csv));
            return render(std::span<const DegradationDelta>(deltas), parse_format(format));
        },
        py::arg("scores_csv"), py::arg("format") = "markdown");
    m.def(
        "feature_histograms",
        [](const std::string& counts_csv, std::uint64_t bin_width) {
            py::dict out;
            for (const auto& hist : build_histograms(parse_feature_counts(counts_csv), bin_width)) {
                py::dict bins;
                for (const auto& [bin, images] : hist.bins) bins[py::int_(bin)] = images;
                out[py::str(std::string(to_string(hist.level)))] = bins;
            }
            return out;
        },
        py::arg("counts_csv"), py::arg("bin_width") = kDefaultBinWidth,
        "Per-level histograms {level: {bin: images}} with bin = count // bin_width.");
}
