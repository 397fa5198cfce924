#pragma once

#include <string>
#include <vector>

namespace blurbench::oracle {

using Words = std::vector<std::string>;

// Reference sets for a whole corpus, one entry per image.
struct Corpus {
    std::vector<std::vector<Words>> references;
};

// Number of images whose references contain `gram` as a contiguous window.
int brute_document_frequency(const Corpus& corpus, const Words& gram);

// CIDEr-D evaluated straight from its definition with dense vectors over the
// union vocabulary of the candidate and the reference at hand.
double direct_cider_d(const Corpus& corpus, const Words& candidate, const std::vector<Words>& refs,
                      int max_n = 4, double sigma = 6.0, double scale = 10.0);

}  // namespace blurbench::oracle
