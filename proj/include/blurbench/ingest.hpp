#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blurbench/levels.hpp"

namespace blurbench {

struct ImageRecord {
    std::string image_id;
    std::string file_name;

    friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

/// Images with their reference captions. Image ids are opaque strings; COCO
/// integer ids are stored in decimal. Captions are kept verbatim.
struct Dataset {
    std::string split_name;
    std::vector<ImageRecord> images;
    std::map<std::string, std::vector<std::string>> references;

    std::size_t size() const noexcept { return images.size(); }
    const std::vector<std::string>& references_for(const std::string& image_id) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// COCO-style caption JSON: {"images": [{id, file_name}], "annotations": [{image_id, caption}]}.
/// Throws FormatError on malformed JSON, duplicate image ids, annotations for
/// unknown images, or images with no captions. Image order is preserved.
Dataset parse_captions(std::string_view document, std::string split_name = {});
std::string serialize_captions(const Dataset& dataset);

/// One candidate caption per (image_id, level).
class PredictionSet {
public:
    using Key = std::pair<std::string, BlurLevel>;

    /// Throws ValidationError if the pair is already present.
    void add(std::string image_id, BlurLevel level, std::string caption);

    /// nullptr when absent.
    const std::string* find(const std::string& image_id, BlurLevel level) const;

    std::set<BlurLevel> levels() const;
    std::size_t size() const noexcept { return candidates_.size(); }
    const std::map<Key, std::string>& candidates() const noexcept { return candidates_; }

    friend bool operator==(const PredictionSet&, const PredictionSet&) = default;

private:
    std::map<Key, std::string> candidates_;
};

/// JSON array of {image_id, blur_level, caption}. Throws FormatError on
/// malformed entries, unknown level tokens, or duplicate pairs.
PredictionSet parse_predictions(std::string_view document);
std::string serialize_predictions(const PredictionSet& predictions);

struct FeatureCountRecord {
    std::string image_id;
    BlurLevel level;
    std::uint64_t count;

    friend bool operator==(const FeatureCountRecord&, const FeatureCountRecord&) = default;
};

/// CSV with header "image_id,level,count". Counts must be non-negative integers.
std::vector<FeatureCountRecord> parse_feature_counts(std::string_view document);
std::string serialize_feature_counts(std::span<const FeatureCountRecord> records);

enum class BlurFlag { WithBlur, NoBlur };

std::string_view to_string(BlurFlag flag) noexcept;

struct BlurFlagAnnotation {
    std::map<std::string, BlurFlag> flags;

    friend bool operator==(const BlurFlagAnnotation&, const BlurFlagAnnotation&) = default;
};

/// CSV with header "image_id,flag", flag in {with_blur, no_blur}.
BlurFlagAnnotation parse_blur_flags(std::string_view document);
std::string serialize_blur_flags(const BlurFlagAnnotation& annotation);

/// Images carrying `flag`, references included, original order kept.
/// Throws ValidationError if a dataset image has no flag or a flag names an unknown image.
Dataset filter_by_blur_flag(const Dataset& dataset, const BlurFlagAnnotation& annotation, BlurFlag flag);

}  // namespace blurbench
