#include "blurbench/ingest.hpp"

#include <charconv>
#include <unordered_set>

#include "blurbench/error.hpp"
#include "csv.hpp"
#include "json.hpp"

namespace blurbench {

namespace {

using nlohmann::json;

json parse_json(std::string_view document, std::string_view what) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(what) + ": malformed JSON: " + e.what());
    }
}

// COCO ids are integers, VizWiz ids are file names; both become strings.
std::string id_string(const json& value, std::string_view what) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
    if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
    throw FormatError(std::string(what) + ": image id must be a string or an integer");
}

const json& member(const json& obj, const char* key, std::string_view what) {
    if (!obj.is_object()) throw FormatError(std::string(what) + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(std::string(what) + ": missing \"" + key + "\"");
    return *it;
}

std::string string_member(const json& obj, const char* key, std::string_view what) {
    const json& value = member(obj, key, what);
    if (!value.is_string()) throw FormatError(std::string(what) + ": \"" + key + "\" must be a string");
    return value.get<std::string>();
}

BlurLevel level_field(std::string_view token, std::string_view where) {
    const auto level = level_from_token(token);
    if (!level) throw FormatError(std::string(where) + ": unknown blur level \"" + std::string(token) + "\"");
    return *level;
}

}  // namespace

const std::vector<std::string>& Dataset::references_for(const std::string& image_id) const {
    const auto it = references.find(image_id);
    if (it == references.end()) throw ValidationError("no references for image " + image_id);
    return it->second;
}

Dataset parse_captions(std::string_view document, std::string split_name) {
    const json root = parse_json(document, "captions");
    const json& images = member(root, "images", "captions");
    const json& annotations = member(root, "annotations", "captions");
    if (!images.is_array() || !annotations.is_array()) {
        throw FormatError("captions: \"images\" and \"annotations\" must be arrays");
    }

    Dataset ds;
    ds.split_name = std::move(split_name);
    ds.images.reserve(images.size());
    std::unordered_set<std::string> known;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string where = "captions: images[" + std::to_string(i) + "]";
        std::string id = id_string(member(images[i], "id", where), where);
        std::string file_name = string_member(images[i], "file_name", where);
        if (!known.insert(id).second) throw FormatError(where + ": duplicate image id " + id);
        ds.images.push_back({std::move(id), std::move(file_name)});
    }
    for (std::size_t i = 0; i < annotations.size(); ++i) {
        const std::string where = "captions: annotations[" + std::to_string(i) + "]";
        std::string id = id_string(member(annotations[i], "image_id", where), where);
        if (!known.contains(id)) throw FormatError(where + ": unknown image id " + id);
        ds.references[id].push_back(string_member(annotations[i], "caption", where));
    }
    for (const auto& image : ds.images) {
        if (!ds.references.contains(image.image_id)) {
            throw FormatError("captions: image " + image.image_id + " has no captions");
        }
    }
    return ds;
}

std::string serialize_captions(const Dataset& dataset) {
    json images = json::array();
    json annotations = json::array();
    for (const auto& image : dataset.images) {
        images.push_back({{"id", image.image_id}, {"file_name", image.file_name}});
        const auto it = dataset.references.find(image.image_id);
        if (it == dataset.references.end()) continue;
        for (const auto& caption : it->second) {
            annotations.push_back({{"image_id", image.image_id}, {"caption", caption}});
        }
    }
    json root = {{"images", std::move(images)}, {"annotations", std::move(annotations)}};
    return root.dump(1) + "\n";
}

void PredictionSet::add(std::string image_id, BlurLevel level, std::string caption) {
    auto [it, inserted] = candidates_.try_emplace(Key{image_id, level}, std::move(caption));
    if (!inserted) {
        throw ValidationError("duplicate prediction for image " + image_id + " at " + std::string(to_string(level)));
    }
}

const std::string* PredictionSet::find(const std::string& image_id, BlurLevel level) const {
    const auto it = candidates_.find(Key{image_id, level});
    return it == candidates_.end() ? nullptr : &it->second;
}

std::set<BlurLevel> PredictionSet::levels() const {
    std::set<BlurLevel> out;
    for (const auto& [key, caption] : candidates_) out.insert(key.second);
    return out;
}

PredictionSet parse_predictions(std::string_view document) {
    const json root = parse_json(document, "predictions");
    if (!root.is_array()) throw FormatError("predictions: expected a JSON array");
    PredictionSet set;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const std::string where = "predictions[" + std::to_string(i) + "]";
        std::string id = id_string(member(root[i], "image_id", where), where);
        const BlurLevel level = level_field(string_member(root[i], "blur_level", where), where);
        try {
            set.add(std::move(id), level, string_member(root[i], "caption", where));
        } catch (const ValidationError& e) {
            throw FormatError(where + ": " + e.what());
        }
    }
    return set;
}

std::string serialize_predictions(const PredictionSet& predictions) {
    json root = json::array();
    for (const auto& [key, caption] : predictions.candidates()) {
        root.push_back({{"image_id", key.first}, {"blur_level", to_string(key.second)}, {"caption", caption}});
    }
    return root.dump(1) + "\n";
}

std::vector<FeatureCountRecord> parse_feature_counts(std::string_view document) {
    constexpr std::string_view what = "feature counts";
    const auto rows = csv::read_rows(document);
    csv::expect_header(rows, {"image_id", "level", "count"}, what);
    std::vector<FeatureCountRecord> records;
    records.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = csv::location(what, row.line);
        if (row.fields.size() != 3) throw FormatError(where + ": expected 3 fields");
        if (row.fields[0].empty()) throw FormatError(where + ": empty image_id");
        const BlurLevel level = level_field(row.fields[1], where);

        const std::string_view text = row.fields[2];
        std::int64_t count = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), count);
        if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
            throw FormatError(where + ": count \"" + std::string(text) + "\" is not an integer");
        }
        if (count < 0) throw FormatError(where + ": negative count " + std::to_string(count));
        records.push_back({std::string(row.fields[0]), level, static_cast<std::uint64_t>(count)});
    }
    return records;
}

std::string serialize_feature_counts(std::span<const FeatureCountRecord> records) {
    std::string out = "image_id,level,count\n";
    for (const auto& rec : records) {
        csv::check_field(rec.image_id, "feature counts");
        out += rec.image_id;
        out += ',';
        out += to_string(rec.level);
        out += ',';
        out += std::to_string(rec.count);
        out += '\n';
    }
    return out;
}

std::string_view to_string(BlurFlag flag) noexcept {
    return flag == BlurFlag::WithBlur ? "with_blur" : "no_blur";
}

BlurFlagAnnotation parse_blur_flags(std::string_view document) {
    constexpr std::string_view what = "blur flags";
    const auto rows = csv::read_rows(document);
    csv::expect_header(rows, {"image_id", "flag"}, what);
    BlurFlagAnnotation ann;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = csv::location(what, row.line);
        if (row.fields.size() != 2) throw FormatError(where + ": expected 2 fields");
        if (row.fields[0].empty()) throw FormatError(where + ": empty image_id");
        BlurFlag flag;
        if (row.fields[1] == "with_blur") {
            flag = BlurFlag::WithBlur;
        } else if (row.fields[1] == "no_blur") {
            flag = BlurFlag::NoBlur;
        } else {
            throw FormatError(where + ": flag must be with_blur or no_blur");
        }
        if (!ann.flags.emplace(std::string(row.fields[0]), flag).second) {
            throw FormatError(where + ": duplicate image id " + std::string(row.fields[0]));
        }
    }
    return ann;
}

std::string serialize_blur_flags(const BlurFlagAnnotation& annotation) {
    std::string out = "image_id,flag\n";
    for (const auto& [id, flag] : annotation.flags) {
        csv::check_field(id, "blur flags");
        out += id;
        out += ',';
        out += to_string(flag);
        out += '\n';
    }
    return out;
}

Dataset filter_by_blur_flag(const Dataset& dataset, const BlurFlagAnnotation& annotation, BlurFlag flag) {
    std::unordered_set<std::string_view> ids;
    for (const auto& image : dataset.images) ids.insert(image.image_id);
    for (const auto& [id, f] : annotation.flags) {
        if (!ids.contains(id)) throw ValidationError("blur flag given for unknown image " + id);
    }

    Dataset subset;
    subset.split_name = dataset.split_name + (dataset.split_name.empty() ? "" : ":") + std::string(to_string(flag));
    for (const auto& image : dataset.images) {
        const auto it = annotation.flags.find(image.image_id);
        if (it == annotation.flags.end()) throw ValidationError("image " + image.image_id + " has no blur flag");
        if (it->second != flag) continue;
        subset.images.push_back(image);
        if (const auto refs = dataset.references.find(image.image_id); refs != dataset.references.end()) {
            subset.references.emplace(refs->first, refs->second);
        }
    }
    return subset;
}

}  // namespace blurbench
