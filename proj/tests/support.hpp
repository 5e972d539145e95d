#ifndef MEDIR_TESTS_SUPPORT_HPP
#define MEDIR_TESTS_SUPPORT_HPP

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "medir/medir.hpp"

namespace support {

inline std::filesystem::path fixture_path(const std::string& relative) {
    return std::filesystem::path(MEDIR_FIXTURE_DIR) / relative;
}

inline std::filesystem::path data_path(const std::string& relative) {
    return std::filesystem::path(MEDIR_DATA_DIR) / relative;
}

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& prefix) {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               (prefix + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

inline medir::StopwordPolicy default_policy() {
    medir::StopwordPolicy policy;
    policy.static_list = medir::load_stopword_file(data_path("stopwords_en.txt").string());
    return policy;
}

inline medir::SemanticResourceSet fixture_resources() {
    return medir::load_resources(
        medir::ResourcePaths::in_directory(fixture_path("resources")));
}

inline std::vector<medir::Document> load_fixture_corpus(const std::string& name) {
    medir::CorpusParseResult parsed = medir::parse_corpus_file(fixture_path("corpus/" + name));
    return medir::extract_all(parsed.documents);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }

    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    bool chance(double p) { return real(0.0, 1.0) < p; }

    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[static_cast<std::size_t>(below(pool.size()))];
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline const std::vector<std::string>& word_pool() {
    static const std::vector<std::string> pool = {
        "fever",  "cough",   "lesion",  "therapy", "dosage",  "renal",   "cardiac", "tumor",
        "biopsy", "plasma",  "spine",   "nerve",   "graft",   "serum",   "clinic",  "ward",
        "nurse",  "imaging", "ulcer",   "sepsis",  "artery",  "vein",    "bone",    "joint",
        "liver",  "kidney",  "lung",    "brain",   "skin",    "blood",   "acute",   "chronic",
        "benign", "oral",    "topical", "viral",   "fungal",  "sterile", "routine", "fracture"};
    return pool;
}

inline const std::vector<std::string>& filler_pool() {
    static const std::vector<std::string> pool = {"the", "and", "of", "with", "for", "about"};
    return pool;
}

inline std::string random_sentence(Rng& rng, std::size_t min_words, std::size_t max_words) {
    std::size_t n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(min_words),
                                                         static_cast<std::int64_t>(max_words)));
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
        if (!text.empty()) text += " ";
        text += rng.chance(0.2) ? rng.pick(filler_pool()) : rng.pick(word_pool());
    }
    return text;
}

struct RandomFixture {
    std::vector<medir::Document> documents;
    medir::SemanticResourceSet resources;
    std::vector<std::string> queries;
};

// A small self-consistent world: documents, lexicons over the same word
// pool, and queries that mix pool words, acronyms and stopwords.
inline RandomFixture random_fixture(std::uint64_t seed, std::size_t doc_count) {
    Rng rng(seed);
    RandomFixture fixture;

    static const std::vector<std::string> acronym_surfaces = {"tia", "cabg", "copd", "uti"};
    for (const std::string& acronym : acronym_surfaces) {
        std::size_t senses = rng.chance(0.3) ? 2 : 1;
        for (std::size_t s = 0; s < senses; ++s) {
            std::string full = rng.pick(word_pool());
            std::size_t extra = static_cast<std::size_t>(rng.between(1, 3));
            for (std::size_t i = 0; i < extra; ++i) full += " " + rng.pick(word_pool());
            fixture.resources.add_acronym(acronym, full);
        }
    }
    for (int i = 0; i < 6; ++i) {
        std::string term = rng.pick(word_pool());
        std::string value = rng.pick(word_pool());
        if (rng.chance(0.4)) value += " " + rng.pick(word_pool());
        fixture.resources.add_synonym(term, value);
    }
    for (int i = 0; i < 10; ++i) fixture.resources.add_metamap_concept(rng.pick(word_pool()));
    for (int i = 0; i < 6; ++i) fixture.resources.add_mrdef_concept(rng.pick(word_pool()), "");

    for (std::size_t d = 0; d < doc_count; ++d) {
        medir::Document doc;
        char uid[32];
        std::snprintf(uid, sizeof(uid), "doc%04zu", d);
        doc.uid = uid;
        doc.text = random_sentence(rng, 5, 60);
        if (rng.chance(0.25)) doc.text += " " + rng.pick(acronym_surfaces);
        if (rng.chance(0.15)) doc.text += " " + rng.pick(acronym_surfaces);
        fixture.documents.push_back(std::move(doc));
    }

    for (int q = 0; q < 5; ++q) {
        std::string query = random_sentence(rng, 3, 8);
        if (rng.chance(0.5)) query += " " + rng.pick(acronym_surfaces);
        fixture.queries.push_back(std::move(query));
    }
    return fixture;
}

} // namespace support

#endif
