#ifndef MEDIR_INDEX_HPP
#define MEDIR_INDEX_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "corpus.hpp"
#include "errors.hpp"
#include "resources.hpp"
#include "run_config.hpp"
#include "text.hpp"

namespace medir {

struct Posting {
    std::string doc_uid;
    std::uint64_t tf = 0;
    double normalized_tf = 0.0;
};

struct TermEntry {
    std::uint64_t df = 0;
    double idf = 0.0;
    std::vector<Posting> postings; // corpus order
};

struct InvertedIndex {
    std::uint64_t total_documents = 0;
    std::map<std::string, TermEntry> vocabulary;
    std::map<std::string, std::uint64_t> doc_lengths; // stemmed unigram counts, pre-enrichment
    RunConfig build_config;
};

namespace detail {

struct PhrasePattern {
    std::string value;               // the stored full form, as it enters queries
    std::vector<std::string> stems;  // stemmed token sequence to find in documents
};

// Full forms are matched in document text by their stemmed token sequence,
// so a document spelling an acronym out still receives the full-form entry.
inline std::vector<PhrasePattern> collect_fullform_patterns(const SemanticResourceSet& resources) {
    std::map<std::string, std::vector<std::string>> dedup;
    for (const auto& [key, values] : resources.acronym_table) {
        for (const std::string& value : values) {
            if (dedup.count(value)) continue;
            std::vector<std::string> stems = fold_and_tokenize(value);
            for (std::string& s : stems) s = porter_stem(s);
            dedup.emplace(value, std::move(stems));
        }
    }
    std::vector<PhrasePattern> patterns;
    patterns.reserve(dedup.size());
    for (auto& [value, stems] : dedup)
        if (!stems.empty()) patterns.push_back({value, std::move(stems)});
    return patterns;
}

inline std::uint64_t count_subsequence(const std::vector<std::string>& tokens,
                                       const std::vector<std::string>& pattern) {
    if (pattern.empty() || tokens.size() < pattern.size()) return 0;
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i + pattern.size() <= tokens.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            if (tokens[i + k] != pattern[k]) {
                match = false;
                break;
            }
        }
        if (match) ++hits;
    }
    return hits;
}

} // namespace detail

inline InvertedIndex build_index(const std::vector<Document>& documents,
                                 const SemanticResourceSet& resources,
                                 const StopwordPolicy& stopwords,
                                 const RunConfig& config) {
    if (documents.empty()) throw EmptyCorpus("cannot index an empty corpus");

    InvertedIndex index;
    index.build_config = config;

    std::vector<detail::PhrasePattern> patterns;
    if (config.index_fullforms) patterns = detail::collect_fullform_patterns(resources);

    std::unordered_set<std::string> seen_uids;
    for (const Document& doc : documents) {
        if (!seen_uids.insert(doc.uid).second) continue;

        NGramSet grams = text_pipeline(doc.text, stopwords);
        std::uint64_t doc_length = grams.unigrams.size();
        index.doc_lengths[doc.uid] = doc_length;

        std::map<std::string, std::uint64_t> counts;
        for (const std::string& term : grams.unigrams) ++counts[term];

        if (config.index_fullforms) {
            for (const auto& [term, tf] : std::map<std::string, std::uint64_t>(counts)) {
                if (const auto* fullforms = resources.lookup_acronym(term))
                    for (const std::string& form : *fullforms) counts[form] += tf;
            }
            for (const auto& pattern : patterns) {
                std::uint64_t hits = detail::count_subsequence(grams.unigrams, pattern.stems);
                if (hits > 0) counts[pattern.value] += hits;
            }
        }
        if (config.index_compounds) {
            std::map<std::string, std::uint64_t> compound_counts;
            for (const std::string& gram : grams.bigrams) ++compound_counts[gram];
            for (const std::string& gram : grams.trigrams) ++compound_counts[gram];
            for (const auto& [gram, tf] : compound_counts) {
                counts[gram] += tf;
                if (const auto* fullforms = resources.lookup_acronym(gram))
                    for (const std::string& form : *fullforms) counts[form] += tf;
            }
        }

        for (const auto& [term, tf] : counts) {
            double normalized = doc_length == 0
                                    ? 0.0
                                    : static_cast<double>(tf) / static_cast<double>(doc_length);
            index.vocabulary[term].postings.push_back({doc.uid, tf, normalized});
        }
    }

    index.total_documents = seen_uids.size();
    for (auto& [term, entry] : index.vocabulary) {
        entry.df = entry.postings.size();
        entry.idf = compute_idf(index.total_documents, entry.df);
    }
    return index;
}

// Document frequencies of folded surface tokens, before stopword removal or
// stemming. Feeds stopword augmentation, which must act on surface forms.
inline std::map<std::string, double> surface_token_idfs(const std::vector<Document>& documents) {
    std::map<std::string, std::uint64_t> df;
    std::uint64_t total = 0;
    for (const Document& doc : documents) {
        ++total;
        std::unordered_set<std::string> distinct;
        for (std::string& token : fold_and_tokenize(doc.text)) distinct.insert(std::move(token));
        for (const std::string& token : distinct) ++df[token];
    }
    std::map<std::string, double> idfs;
    for (const auto& [token, count] : df) idfs[token] = compute_idf(total, count);
    return idfs;
}

namespace detail {

inline std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline double parse_double(const std::string& text, const std::string& context) {
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw IoError("bad number '" + text + "' in " + context);
    return value;
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& context) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw IoError("bad count '" + text + "' in " + context);
    return value;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(pos));
            return cols;
        }
        cols.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

} // namespace detail

constexpr int kIndexFormatVersion = 1;

// Directory layout: manifest, vocab.tsv, postings.tsv, doclen.tsv. Doubles
// are written with 17 significant digits so a reload is bit-exact.
inline void persist_index(const InvertedIndex& index, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "manifest", std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / "manifest").string());
        out << "format-version\t" << kIndexFormatVersion << "\n";
        out << "documents\t" << index.total_documents << "\n";
        out << "config\t" << index.build_config.run_id << ":" << index.build_config.flags_string()
            << "\n";
        out << "config-hash\t" << index.build_config.config_hash() << "\n";
    }
    {
        std::ofstream out(dir / "vocab.tsv", std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / "vocab.tsv").string());
        for (const auto& [term, entry] : index.vocabulary)
            out << term << "\t" << entry.df << "\t" << detail::format_double(entry.idf) << "\n";
    }
    {
        std::ofstream out(dir / "postings.tsv", std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / "postings.tsv").string());
        for (const auto& [term, entry] : index.vocabulary)
            for (const Posting& p : entry.postings)
                out << term << "\t" << p.doc_uid << "\t" << p.tf << "\t"
                    << detail::format_double(p.normalized_tf) << "\n";
    }
    {
        std::ofstream out(dir / "doclen.tsv", std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / "doclen.tsv").string());
        for (const auto& [uid, length] : index.doc_lengths) out << uid << "\t" << length << "\n";
    }
}

inline InvertedIndex load_index(const std::filesystem::path& dir) {
    InvertedIndex index;

    std::ifstream manifest(dir / "manifest", std::ios::binary);
    if (!manifest) throw IoError("cannot open " + (dir / "manifest").string());
    bool version_seen = false;
    std::string line;
    while (std::getline(manifest, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = detail::split_tabs(line);
        if (cols.size() != 2) throw IoError("malformed manifest line in " + dir.string());
        if (cols[0] == "format-version") {
            if (cols[1] != std::to_string(kIndexFormatVersion))
                throw FormatVersionMismatch("index format version " + cols[1] + " unsupported");
            version_seen = true;
        } else if (cols[0] == "documents") {
            index.total_documents = detail::parse_u64(cols[1], "manifest");
        } else if (cols[0] == "config") {
            std::size_t colon = cols[1].find(':');
            std::string flags = colon == std::string::npos ? "" : cols[1].substr(colon + 1);
            if (flags.size() != 6) throw IoError("malformed config line in manifest");
            index.build_config.run_id = cols[1].substr(0, colon);
            index.build_config.index_fullforms = flags[0] == '1';
            index.build_config.index_compounds = flags[1] == '1';
            index.build_config.expand_fullforms = flags[2] == '1';
            index.build_config.expand_compounds = flags[3] == '1';
            index.build_config.heuristic_weighting = flags[4] == '1';
            index.build_config.expand_synonyms = flags[5] == '1';
        }
    }
    if (!version_seen) throw FormatVersionMismatch("manifest lacks a format-version line");

    {
        std::ifstream in(dir / "vocab.tsv", std::ios::binary);
        if (!in) throw IoError("cannot open " + (dir / "vocab.tsv").string());
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto cols = detail::split_tabs(line);
            if (cols.size() != 3 || cols[0].empty()) throw IoError("corrupt vocab.tsv in " + dir.string());
            TermEntry& entry = index.vocabulary[cols[0]];
            entry.df = detail::parse_u64(cols[1], "vocab.tsv");
            entry.idf = detail::parse_double(cols[2], "vocab.tsv");
        }
    }
    {
        std::ifstream in(dir / "postings.tsv", std::ios::binary);
        if (!in) throw IoError("cannot open " + (dir / "postings.tsv").string());
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto cols = detail::split_tabs(line);
            if (cols.size() != 4 || cols[0].empty() || cols[1].empty())
                throw IoError("corrupt postings.tsv in " + dir.string());
            auto it = index.vocabulary.find(cols[0]);
            if (it == index.vocabulary.end())
                throw IoError("postings.tsv references unknown term '" + cols[0] + "'");
            it->second.postings.push_back({cols[1], detail::parse_u64(cols[2], "postings.tsv"),
                                           detail::parse_double(cols[3], "postings.tsv")});
        }
    }
    {
        std::ifstream in(dir / "doclen.tsv", std::ios::binary);
        if (!in) throw IoError("cannot open " + (dir / "doclen.tsv").string());
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto cols = detail::split_tabs(line);
            if (cols.size() != 2 || cols[0].empty()) throw IoError("corrupt doclen.tsv in " + dir.string());
            index.doc_lengths[cols[0]] = detail::parse_u64(cols[1], "doclen.tsv");
        }
    }

    for (const auto& [term, entry] : index.vocabulary)
        if (entry.df != entry.postings.size())
            throw IoError("postings.tsv is truncated: term '" + term + "' has " +
                          std::to_string(entry.postings.size()) + " postings, df says " +
                          std::to_string(entry.df));
    return index;
}

} // namespace medir

#endif
