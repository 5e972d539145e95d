#ifndef MEDIR_RETRIEVAL_HPP
#define MEDIR_RETRIEVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "index.hpp"
#include "query.hpp"
#include "run_config.hpp"

namespace medir {

struct ScoredDocument {
    std::string doc_uid;
    double score = 0.0;
    std::vector<std::string> matched_terms; // terms with a nonzero contribution
};

// Cosine ranker over one immutable index. Document vector components are
// normalized_tf * idf across the whole vocabulary; query components are
// weight * idf under heuristic weighting, otherwise count/|rq| * idf.
class Scorer {
public:
    explicit Scorer(const InvertedIndex& index) : index_(&index) {
        for (const auto& [term, entry] : index.vocabulary) {
            for (const Posting& posting : entry.postings) {
                double component = posting.normalized_tf * entry.idf;
                doc_norms_sq_[posting.doc_uid] += component * component;
            }
        }
    }

    const InvertedIndex& index() const { return *index_; }

    std::vector<ScoredDocument> score_all(const ReformulatedQuery& rq,
                                          const RunConfig& config) const {
        // Merge duplicate term strings; the first occurrence's weight wins.
        std::map<std::string, double> query_components;
        double query_norm_sq = 0.0;
        for (const WeightedQueryTerm* term : rq.all_terms()) {
            auto entry = index_->vocabulary.find(term->term);
            if (entry == index_->vocabulary.end()) continue;
            if (query_components.count(term->term)) continue;
            double weight = config.heuristic_weighting
                                ? term->weight
                                : (rq.rq_len > 0
                                       ? static_cast<double>(term->count) /
                                             static_cast<double>(rq.rq_len)
                                       : 0.0);
            double component = weight * entry->second.idf;
            query_components.emplace(term->term, component);
            query_norm_sq += component * component;
        }
        if (query_norm_sq <= 0.0) return {};
        double query_norm = std::sqrt(query_norm_sq);

        std::map<std::string, ScoredDocument> by_doc;
        for (const auto& [term, q_component] : query_components) {
            if (q_component <= 0.0) continue;
            const TermEntry& entry = index_->vocabulary.at(term);
            for (const Posting& posting : entry.postings) {
                double d_component = posting.normalized_tf * entry.idf;
                if (d_component <= 0.0) continue;
                ScoredDocument& scored = by_doc[posting.doc_uid];
                scored.doc_uid = posting.doc_uid;
                scored.score += q_component * d_component;
                scored.matched_terms.push_back(term);
            }
        }

        std::vector<ScoredDocument> results;
        results.reserve(by_doc.size());
        for (auto& [uid, scored] : by_doc) {
            auto norm_it = doc_norms_sq_.find(uid);
            double doc_norm_sq = norm_it == doc_norms_sq_.end() ? 0.0 : norm_it->second;
            if (doc_norm_sq <= 0.0 || scored.score <= 0.0) continue;
            scored.score /= std::sqrt(doc_norm_sq) * query_norm;
            results.push_back(std::move(scored));
        }
        std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.doc_uid < b.doc_uid;
        });
        return results;
    }

    std::vector<ScoredDocument> top_k(const ReformulatedQuery& rq, std::size_t k,
                                      const RunConfig& config) const {
        std::vector<ScoredDocument> results = score_all(rq, config);
        if (results.size() > k) results.resize(k);
        return results;
    }

private:
    const InvertedIndex* index_;
    std::map<std::string, double> doc_norms_sq_;
};

inline void write_trec_run(std::ostream& out, const std::string& query_id,
                           const std::vector<ScoredDocument>& results,
                           const std::string& run_tag) {
    std::size_t rank = 1;
    char score_buf[64];
    for (const ScoredDocument& result : results) {
        std::snprintf(score_buf, sizeof(score_buf), "%.6f", result.score);
        out << query_id << " Q0 " << result.doc_uid << " " << rank << " " << score_buf << " "
            << run_tag << "\n";
        ++rank;
    }
}

} // namespace medir

#endif
