#include "blurbench/cider.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "blurbench/error.hpp"

namespace blurbench {

namespace {

bool is_ascii_alnum(unsigned char c) noexcept {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// idf-weighted count vector of one sentence, per n.
struct WeightedVector {
    std::vector<std::map<std::string, double>> weights;
    std::vector<double> norms;
    double length = 0.0;
};

WeightedVector weigh(const NGramCounts& counts, std::size_t tokens, const IdfTable& idf) {
    WeightedVector v;
    v.weights.resize(counts.size());
    v.norms.assign(counts.size(), 0.0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const int n = static_cast<int>(k) + 1;
        for (const auto& [gram, count] : counts[k]) {
            const double w = count * idf.idf(n, gram);
            v.weights[k].emplace(gram, w);
            v.norms[k] += w * w;
        }
        v.norms[k] = std::sqrt(v.norms[k]);
    }
    v.length = static_cast<double>(tokens);
    return v;
}

// Length-penalized, clipped cosine per n, summed over n.
double similarity(const WeightedVector& cand, const WeightedVector& ref, double sigma) {
    const double delta = cand.length - ref.length;
    const double penalty = std::exp(-(delta * delta) / (2.0 * sigma * sigma));
    double total = 0.0;
    for (std::size_t k = 0; k < cand.weights.size(); ++k) {
        if (cand.norms[k] == 0.0 || ref.norms[k] == 0.0) continue;
        double dot = 0.0;
        for (const auto& [gram, w] : cand.weights[k]) {
            const auto it = ref.weights[k].find(gram);
            if (it == ref.weights[k].end()) continue;
            dot += std::min(w, it->second) * it->second;
        }
        total += dot / (cand.norms[k] * ref.norms[k]) * penalty;
    }
    return total;
}

double score_against(const WeightedVector& cand, std::span<const WeightedVector> refs, const CiderConfig& cfg) {
    double sum = 0.0;
    for (const auto& ref : refs) sum += similarity(cand, ref, cfg.sigma);
    return cfg.scale * sum / (static_cast<double>(cfg.max_n) * static_cast<double>(refs.size()));
}

std::vector<std::vector<TokenSeq>> tokenized_references(const Dataset& dataset) {
    std::vector<std::vector<TokenSeq>> out;
    out.reserve(dataset.images.size());
    for (const auto& image : dataset.images) {
        std::vector<TokenSeq> refs;
        for (const auto& caption : dataset.references_for(image.image_id)) refs.push_back(tokenize(caption));
        out.push_back(std::move(refs));
    }
    return out;
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
    TokenSeq tokens;
    std::string current;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_ascii_alnum(c) || c >= 0x80) {
            current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

NGramCounts ngram_counts(const TokenSeq& tokens, int max_n) {
    if (max_n < 1) throw ValidationError("max_n must be >= 1");
    NGramCounts counts(static_cast<std::size_t>(max_n));
    for (std::size_t start = 0; start < tokens.size(); ++start) {
        std::string gram;
        for (int n = 1; n <= max_n && start + n <= tokens.size(); ++n) {
            if (n > 1) gram += ' ';
            gram += tokens[start + n - 1];
            ++counts[n - 1][gram];
        }
    }
    return counts;
}

void CiderConfig::validate() const {
    if (max_n < 1) throw ValidationError("cider max_n must be >= 1");
    if (!(sigma > 0.0)) throw ValidationError("cider sigma must be > 0");
    if (!(scale > 0.0)) throw ValidationError("cider scale must be > 0");
}

IdfTable::IdfTable(std::size_t corpus_size, int max_n)
    : corpus_size_(corpus_size), df_(static_cast<std::size_t>(max_n)) {
    if (corpus_size == 0) throw ValidationError("idf table needs a non-empty corpus");
    if (max_n < 1) throw ValidationError("max_n must be >= 1");
}

void IdfTable::add_document(std::span<const NGramCounts> references) {
    for (std::size_t k = 0; k < df_.size(); ++k) {
        std::set<std::string_view> grams;
        for (const auto& ref : references) {
            if (k >= ref.size()) continue;
            for (const auto& [gram, count] : ref[k]) grams.insert(gram);
        }
        for (const auto gram : grams) ++df_[k][std::string(gram)];
    }
}

int IdfTable::document_frequency(int n, const std::string& ngram) const {
    const auto& table = df_.at(static_cast<std::size_t>(n - 1));
    const auto it = table.find(ngram);
    return it == table.end() ? 0 : it->second;
}

double IdfTable::idf(int n, const std::string& ngram) const {
    const int df = std::max(1, document_frequency(n, ngram));
    return std::log(static_cast<double>(corpus_size_) / df);
}

IdfTable build_idf(std::span<const std::vector<TokenSeq>> reference_sets, int max_n) {
    if (reference_sets.empty()) throw ValidationError("cannot build idf from an empty dataset");
    IdfTable table(reference_sets.size(), max_n);
    for (const auto& refs : reference_sets) {
        std::vector<NGramCounts> counts;
        counts.reserve(refs.size());
        for (const auto& ref : refs) counts.push_back(ngram_counts(ref, max_n));
        table.add_document(counts);
    }
    return table;
}

IdfTable build_idf(const Dataset& dataset, int max_n) {
    if (dataset.images.empty()) throw ValidationError("cannot build idf from an empty dataset");
    const auto refs = tokenized_references(dataset);
    return build_idf(refs, max_n);
}

double cider_d(const TokenSeq& candidate, std::span<const TokenSeq> refs, const IdfTable& idf,
               const CiderConfig& cfg) {
    cfg.validate();
    if (refs.empty()) throw ValidationError("cider_d needs at least one reference");
    if (cfg.max_n > idf.max_n()) throw ValidationError("idf table has fewer n-gram orders than max_n");
    const WeightedVector cand = weigh(ngram_counts(candidate, cfg.max_n), candidate.size(), idf);
    std::vector<WeightedVector> weighted;
    weighted.reserve(refs.size());
    for (const auto& ref : refs) weighted.push_back(weigh(ngram_counts(ref, cfg.max_n), ref.size(), idf));
    return score_against(cand, weighted, cfg);
}

std::vector<std::string> missing_predictions(const PredictionSet& predictions, const Dataset& dataset,
                                             BlurLevel level) {
    std::vector<std::string> missing;
    for (const auto& image : dataset.images) {
        if (predictions.find(image.image_id, level) == nullptr) missing.push_back(image.image_id);
    }
    return missing;
}

std::vector<double> per_image_cider_d(const PredictionSet& predictions, const Dataset& dataset,
                                      BlurLevel level, const CiderConfig& cfg) {
    cfg.validate();
    if (dataset.images.empty()) throw ValidationError("cannot score an empty dataset");
    if (const auto missing = missing_predictions(predictions, dataset, level); !missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i) list += (i ? ", " : "") + missing[i];
        if (missing.size() > 10) list += ", ...";
        throw ValidationError(std::to_string(missing.size()) + " image(s) lack a " + std::string(to_string(level)) +
                              " prediction: " + list);
    }

    const auto references = tokenized_references(dataset);
    const IdfTable idf = build_idf(references, cfg.max_n);

    std::vector<double> scores;
    scores.reserve(dataset.images.size());
    for (std::size_t i = 0; i < dataset.images.size(); ++i) {
        const TokenSeq candidate = tokenize(*predictions.find(dataset.images[i].image_id, level));
        scores.push_back(cider_d(candidate, references[i], idf, cfg));
    }
    return scores;
}

double corpus_cider_d(const PredictionSet& predictions, const Dataset& dataset, BlurLevel level,
                      const CiderConfig& cfg) {
    const auto scores = per_image_cider_d(predictions, dataset, level, cfg);
    return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

}  // namespace blurbench
