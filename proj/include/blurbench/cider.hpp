#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "blurbench/ingest.hpp"
#include "blurbench/levels.hpp"

namespace blurbench {

/// Lowercase word tokens.
using TokenSeq = std::vector<std::string>;

/// ASCII letters are lowercased; every ASCII character that is not a letter
/// or digit becomes a separator. Bytes >= 0x80 are kept, so UTF-8 words stay whole.
TokenSeq tokenize(std::string_view text);

/// Entry n-1 maps each n-gram (tokens joined by a single space) to its count.
using NGramCounts = std::vector<std::map<std::string, int>>;

NGramCounts ngram_counts(const TokenSeq& tokens, int max_n = 4);

struct CiderConfig {
    int max_n = 4;
    double sigma = 6.0;   ///< Width of the Gaussian length penalty, in tokens.
    double scale = 10.0;

    /// Throws ValidationError unless max_n >= 1, sigma > 0 and scale > 0.
    void validate() const;
};

/// Document frequencies over a corpus of reference sets: an n-gram's df is the
/// number of images with that n-gram in at least one reference.
class IdfTable {
public:
    IdfTable(std::size_t corpus_size, int max_n);

    /// Counts every n-gram that appears in any of one image's references once.
    void add_document(std::span<const NGramCounts> references);

    std::size_t corpus_size() const noexcept { return corpus_size_; }
    int max_n() const noexcept { return static_cast<int>(df_.size()); }
    int document_frequency(int n, const std::string& ngram) const;

    /// ln(corpus_size / max(1, df)).
    double idf(int n, const std::string& ngram) const;

    const std::unordered_map<std::string, int>& frequencies(int n) const { return df_.at(n - 1); }

private:
    std::size_t corpus_size_;
    std::vector<std::unordered_map<std::string, int>> df_;
};

/// Throws ValidationError for an empty dataset.
IdfTable build_idf(const Dataset& dataset, int max_n = 4);
IdfTable build_idf(std::span<const std::vector<TokenSeq>> reference_sets, int max_n = 4);

/// CIDEr-D of one candidate against its references.
///
/// Per n, candidate and reference count vectors are weighted by idf; each
/// candidate weight is clipped to the reference weight before the dot product,
/// which is divided by the two unclipped norms. That similarity is damped by
/// exp(-(lc - lr)^2 / (2 sigma^2)) on token lengths, averaged over references,
/// then over n, and multiplied by scale. A zero norm contributes 0.
///
/// Throws ValidationError if refs is empty.
double cider_d(const TokenSeq& candidate, std::span<const TokenSeq> refs, const IdfTable& idf,
               const CiderConfig& cfg = {});

/// Per-image scores in dataset image order, with idf built from the dataset's
/// references. Throws ValidationError naming the images lacking a prediction.
std::vector<double> per_image_cider_d(const PredictionSet& predictions, const Dataset& dataset,
                                      BlurLevel level, const CiderConfig& cfg = {});

/// Mean of per_image_cider_d.
double corpus_cider_d(const PredictionSet& predictions, const Dataset& dataset, BlurLevel level,
                      const CiderConfig& cfg = {});

/// Dataset image ids that have no candidate at `level`, in dataset order.
std::vector<std::string> missing_predictions(const PredictionSet& predictions, const Dataset& dataset,
                                             BlurLevel level);

}  // namespace blurbench
