#ifndef MEDIR_TEXT_HPP
#define MEDIR_TEXT_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "porter.hpp"

namespace medir {

// Lowercases and splits on every byte that is not [a-z0-9]. Hyphens,
// apostrophes and non-ASCII bytes all act as boundaries; digits are kept.
inline std::vector<std::string> fold_and_tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            current.push_back(static_cast<char>(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

inline double compute_idf(std::uint64_t total_documents, std::uint64_t df) {
    if (df == 0) return 0.0;
    return std::log10(static_cast<double>(total_documents) / static_cast<double>(df));
}

struct StopwordPolicy {
    std::unordered_set<std::string> static_list;
    std::unordered_set<std::string> augmented_list;
    double idf_threshold = 0.0;

    bool contains(const std::string& token) const {
        return static_list.count(token) > 0 || augmented_list.count(token) > 0;
    }
};

inline std::unordered_set<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t");
        std::string word = line.substr(begin, end - begin + 1);
        if (word[0] == '#') continue;
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        words.insert(word);
    }
    return words;
}

// Extends the static list with every term whose idf falls below a cutoff
// placed in the middle of the widest gap between adjacent distinct idf
// values. Ties go to the lowest-valued gap so the fewest terms are dropped.
// Fewer than two distinct values leaves the augmented list empty.
inline StopwordPolicy augment_stopwords(const std::map<std::string, double>& term_idfs,
                                        std::unordered_set<std::string> static_list) {
    StopwordPolicy policy;
    policy.static_list = std::move(static_list);

    std::vector<double> values;
    values.reserve(term_idfs.size());
    for (const auto& [term, idf] : term_idfs) values.push_back(idf);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < 2) return policy;

    std::size_t best = 0;
    double best_gap = values[1] - values[0];
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        double gap = values[i + 1] - values[i];
        if (gap > best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    policy.idf_threshold = (values[best] + values[best + 1]) / 2.0;
    for (const auto& [term, idf] : term_idfs)
        if (idf < policy.idf_threshold) policy.augmented_list.insert(term);
    return policy;
}

struct NGramSet {
    std::vector<std::string> unigrams;
    std::vector<std::string> bigrams;
    std::vector<std::string> trigrams;
};

inline std::vector<std::string> make_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
    std::vector<std::string> grams;
    if (n == 0 || tokens.size() < n) return grams;
    grams.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (std::size_t k = 1; k < n; ++k) {
            gram.push_back(' ');
            gram += tokens[i + k];
        }
        grams.push_back(std::move(gram));
    }
    return grams;
}

// Tokenize, drop stopwords on the surface forms, stem, then build n-grams
// over the surviving sequence. Bigrams and trigrams therefore bridge any
// removed stopwords.
inline NGramSet text_pipeline(std::string_view text, const StopwordPolicy& stopwords) {
    NGramSet out;
    for (std::string& token : fold_and_tokenize(text)) {
        if (stopwords.contains(token)) continue;
        out.unigrams.push_back(porter_stem(token));
    }
    out.bigrams = make_ngrams(out.unigrams, 2);
    out.trigrams = make_ngrams(out.unigrams, 3);
    return out;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string joined;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) joined.push_back(' ');
        joined += tokens[i];
    }
    return joined;
}

} // namespace medir

#endif
