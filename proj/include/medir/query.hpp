#ifndef MEDIR_QUERY_HPP
#define MEDIR_QUERY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "resources.hpp"
#include "run_config.hpp"
#include "text.hpp"

namespace medir {

enum class TermCategory {
    Medical,
    Acronym,
    Abbreviation,
    Synonym,
    FullFormExpansion,
    OtherRelated,
    Supportive,
};

inline const char* to_string(TermCategory category) {
    switch (category) {
    case TermCategory::Medical: return "Medical";
    case TermCategory::Acronym: return "Acronym";
    case TermCategory::Abbreviation: return "Abbreviation";
    case TermCategory::Synonym: return "Synonym";
    case TermCategory::FullFormExpansion: return "FullFormExpansion";
    case TermCategory::OtherRelated: return "OtherRelated";
    case TermCategory::Supportive: return "Supportive";
    }
    return "?";
}

inline bool is_expansion_category(TermCategory category) {
    return category == TermCategory::Synonym || category == TermCategory::FullFormExpansion ||
           category == TermCategory::OtherRelated;
}

struct WeightedQueryTerm {
    std::string term;
    TermCategory category = TermCategory::Supportive;
    std::optional<std::string> source_term; // originals: empty; expansions: the term they came from
    std::uint64_t count = 1;                // occurrences in the original query
    double weight = 0.0;
};

struct ReformulatedQuery {
    std::string query_id;
    std::vector<WeightedQueryTerm> original_terms;
    std::vector<WeightedQueryTerm> expansion_terms;
    std::uint64_t q_len = 0;  // unigram token count of the filtered original query
    std::uint64_t rq_len = 0; // distinct terms after expansion and merging

    std::vector<const WeightedQueryTerm*> all_terms() const {
        std::vector<const WeightedQueryTerm*> terms;
        terms.reserve(original_terms.size() + expansion_terms.size());
        for (const auto& t : original_terms) terms.push_back(&t);
        for (const auto& t : expansion_terms) terms.push_back(&t);
        return terms;
    }
};

// Table-style breakdown of what the lexicons contributed to one query.
struct QueryAnalysis {
    std::vector<std::string> acronyms;
    std::vector<std::string> abbreviations;
    std::vector<std::string> full_form_expansions;
    std::vector<std::string> synonyms;
};

struct CategorizedTerm {
    std::string term;
    TermCategory category = TermCategory::Supportive;
    std::uint64_t count = 1;
    int gram_size = 1;
};

// Categorizes every query n-gram: acronym table hits first, then concept
// table hits, longest grams first. Unigrams that hit nothing stay as
// supportive context terms; bigrams and trigrams that hit nothing are
// dropped (their constituent unigrams are already present).
inline std::vector<CategorizedTerm> categorize(const NGramSet& grams,
                                               const SemanticResourceSet& resources) {
    struct Slot {
        TermCategory category;
        std::uint64_t count;
        int gram_size;
        std::size_t order;
    };
    std::map<std::string, Slot> slots;
    std::size_t order = 0;

    auto visit = [&](const std::vector<std::string>& list, int gram_size) {
        for (const std::string& gram : list) {
            auto it = slots.find(gram);
            if (it != slots.end()) {
                ++it->second.count;
                continue;
            }
            TermCategory category;
            if (resources.lookup_acronym(gram) != nullptr) {
                category = TermCategory::Acronym;
            } else if (resources.recognize_medical(gram)) {
                category = TermCategory::Medical;
            } else if (gram_size == 1) {
                category = TermCategory::Supportive;
            } else {
                continue;
            }
            slots.emplace(gram, Slot{category, 1, gram_size, order++});
        }
    };
    visit(grams.trigrams, 3);
    visit(grams.bigrams, 2);
    visit(grams.unigrams, 1);

    std::vector<CategorizedTerm> terms;
    terms.reserve(slots.size());
    for (const auto& [term, slot] : slots)
        terms.push_back({term, slot.category, slot.count, slot.gram_size});
    // unigrams in appearance order first, then bigrams, then trigrams
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        if (a.gram_size != b.gram_size) return a.gram_size < b.gram_size;
        return slots.at(a.term).order < slots.at(b.term).order;
    });
    return terms;
}

inline ReformulatedQuery expand(std::string query_id, const NGramSet& grams,
                                const SemanticResourceSet& resources, const RunConfig& config,
                                QueryAnalysis* analysis = nullptr) {
    ReformulatedQuery rq;
    rq.query_id = std::move(query_id);
    rq.q_len = grams.unigrams.size();

    std::vector<CategorizedTerm> categorized = categorize(grams, resources);
    std::map<std::string, std::size_t> position;
    for (const CategorizedTerm& term : categorized) {
        if (term.gram_size > 1 && !config.expand_compounds) continue;
        position.emplace(term.term, rq.original_terms.size());
        rq.original_terms.push_back({term.term, term.category, std::nullopt, term.count, 0.0});
    }

    // Expansion passes walk the kept original terms longest-gram first.
    std::vector<const WeightedQueryTerm*> by_length;
    for (const auto& t : rq.original_terms) by_length.push_back(&t);
    std::stable_sort(by_length.begin(), by_length.end(),
                     [](const WeightedQueryTerm* a, const WeightedQueryTerm* b) {
                         auto words = [](const WeightedQueryTerm* t) {
                             return std::count(t->term.begin(), t->term.end(), ' ');
                         };
                         return words(a) > words(b);
                     });

    auto try_add_expansion = [&](const std::string& value, TermCategory category,
                                 const std::string& source) {
        if (position.count(value)) return false; // collides with an original; original wins
        position.emplace(value, rq.original_terms.size() + rq.expansion_terms.size());
        rq.expansion_terms.push_back({value, category, source, 1, 0.0});
        return true;
    };

    if (analysis) {
        for (const WeightedQueryTerm* t : by_length) {
            if (t->category == TermCategory::Acronym) analysis->acronyms.push_back(t->term);
            if (t->category == TermCategory::Abbreviation) analysis->abbreviations.push_back(t->term);
        }
    }
    if (config.expand_fullforms) {
        for (const WeightedQueryTerm* t : by_length) {
            if (t->category != TermCategory::Acronym && t->category != TermCategory::Abbreviation)
                continue;
            if (const auto* forms = resources.lookup_acronym(t->term)) {
                for (const std::string& form : *forms) {
                    if (try_add_expansion(form, TermCategory::FullFormExpansion, t->term) && analysis)
                        analysis->full_form_expansions.push_back(form);
                }
            }
        }
    }
    if (config.expand_synonyms) {
        for (const WeightedQueryTerm* t : by_length) {
            if (t->category != TermCategory::Medical && t->category != TermCategory::Acronym &&
                t->category != TermCategory::Abbreviation)
                continue;
            if (const auto* syns = resources.lookup_synonyms(t->term)) {
                for (const std::string& syn : *syns) {
                    if (try_add_expansion(syn, TermCategory::Synonym, t->term) && analysis)
                        analysis->synonyms.push_back(syn);
                }
            }
        }
    }

    rq.rq_len = rq.original_terms.size() + rq.expansion_terms.size();
    return rq;
}

// Category-driven weights: medical, acronym and abbreviation terms get
// tf/|q|; supportive terms get half that; synonyms inherit their source
// term's weight; other expansion terms get 1/|rq|.
inline void assign_weights(ReformulatedQuery& rq) {
    if (rq.original_terms.empty() && rq.expansion_terms.empty()) return;
    if (rq.q_len == 0) throw ZeroLengthQuery("query has no terms after stopword filtering");
    double q_len = static_cast<double>(rq.q_len);
    double rq_len = static_cast<double>(rq.rq_len);

    std::map<std::string, double> assigned;
    for (WeightedQueryTerm& t : rq.original_terms) {
        double tf = static_cast<double>(t.count);
        switch (t.category) {
        case TermCategory::Medical:
        case TermCategory::Acronym:
        case TermCategory::Abbreviation:
            t.weight = tf / q_len;
            break;
        case TermCategory::Supportive:
            t.weight = tf / (2.0 * q_len);
            break;
        default:
            t.weight = rq_len > 0 ? 1.0 / rq_len : 0.0;
            break;
        }
        assigned[t.term] = t.weight;
    }
    for (WeightedQueryTerm& t : rq.expansion_terms) {
        if (t.category == TermCategory::Synonym && t.source_term) {
            auto it = assigned.find(*t.source_term);
            t.weight = it != assigned.end() ? it->second : (rq_len > 0 ? 1.0 / rq_len : 0.0);
        } else {
            t.weight = rq_len > 0 ? 1.0 / rq_len : 0.0;
        }
        assigned.emplace(t.term, t.weight);
    }
}

inline void assign_uniform_weights(ReformulatedQuery& rq) {
    if (rq.original_terms.empty() && rq.expansion_terms.empty()) return;
    double rq_len = static_cast<double>(rq.rq_len);
    for (WeightedQueryTerm& t : rq.original_terms)
        t.weight = rq_len > 0 ? static_cast<double>(t.count) / rq_len : 0.0;
    for (WeightedQueryTerm& t : rq.expansion_terms)
        t.weight = rq_len > 0 ? static_cast<double>(t.count) / rq_len : 0.0;
}

// Full query path: text pipeline, categorize, expand, weight.
inline ReformulatedQuery reformulate(std::string query_id, std::string_view text,
                                     const StopwordPolicy& stopwords,
                                     const SemanticResourceSet& resources, const RunConfig& config,
                                     QueryAnalysis* analysis = nullptr) {
    NGramSet grams = text_pipeline(text, stopwords);
    ReformulatedQuery rq = expand(std::move(query_id), grams, resources, config, analysis);
    if (config.heuristic_weighting)
        assign_weights(rq);
    else
        assign_uniform_weights(rq);
    return rq;
}

// Two-decimal display truncates toward zero.
inline std::string format_weight(double weight) {
    double shifted = weight * 100.0;
    double truncated = std::floor(shifted + 1e-9);
    if (weight < 0.0) truncated = std::ceil(shifted - 1e-9);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", truncated / 100.0);
    return buf;
}

} // namespace medir

#endif
