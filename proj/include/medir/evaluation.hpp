#ifndef MEDIR_EVALUATION_HPP
#define MEDIR_EVALUATION_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "index.hpp"
#include "query.hpp"
#include "retrieval.hpp"
#include "run_config.hpp"
#include "topics.hpp"

namespace medir {

// Graded judgments collapse to binary relevance: 0 and 1 are irrelevant,
// 2 and 3 are relevant.
inline int binarize(int grade) {
    if (grade < 0 || grade > 3)
        throw InvalidGrade("relevance grade " + std::to_string(grade) + " outside 0..3");
    return grade >= 2 ? 1 : 0;
}

class Qrels {
public:
    std::map<std::string, std::map<std::string, int>> judgments; // query -> doc -> grade

    bool has_query(const std::string& query_id) const { return judgments.count(query_id) > 0; }

    int grade(const std::string& query_id, const std::string& doc_uid) const {
        auto q = judgments.find(query_id);
        if (q == judgments.end()) return -1;
        auto d = q->second.find(doc_uid);
        return d == q->second.end() ? -1 : d->second;
    }

    // Unjudged documents count as irrelevant.
    bool relevant(const std::string& query_id, const std::string& doc_uid) const {
        int g = grade(query_id, doc_uid);
        return g >= 0 && binarize(g) == 1;
    }
};

// Whitespace-separated: query_id, ignored literal, doc_uid, grade.
inline Qrels parse_qrels(std::istream& in, const std::string& name = "qrels") {
    Qrels qrels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream fields(line);
        std::string query_id, ignored, doc_uid, grade_text;
        if (!(fields >> query_id)) continue; // blank line
        if (!(fields >> ignored >> doc_uid >> grade_text))
            throw SchemaError(name, line_no, "expected 4 whitespace-separated columns");
        std::string extra;
        if (fields >> extra) throw SchemaError(name, line_no, "trailing content '" + extra + "'");
        char* end = nullptr;
        long grade = std::strtol(grade_text.c_str(), &end, 10);
        if (end == grade_text.c_str() || *end != '\0')
            throw SchemaError(name, line_no, "grade '" + grade_text + "' is not an integer");
        if (grade < 0 || grade > 3)
            throw InvalidGrade(name + ":" + std::to_string(line_no) + ": relevance grade " +
                               std::to_string(grade) + " outside 0..3");
        qrels.judgments[query_id][doc_uid] = static_cast<int>(grade);
    }
    return qrels;
}

inline Qrels parse_qrels_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open qrels file: " + path.string());
    return parse_qrels(in, path.string());
}

enum class PrecisionMode {
    FixedK,    // divide by k even when fewer documents were retrieved
    Retrieved, // divide by the number actually retrieved (capped at k)
};

inline double precision_at_k(const std::vector<ScoredDocument>& results, const Qrels& qrels,
                             const std::string& query_id, std::size_t k,
                             PrecisionMode mode = PrecisionMode::FixedK) {
    if (k == 0) return 0.0;
    std::size_t considered = std::min(k, results.size());
    std::size_t relevant = 0;
    for (std::size_t i = 0; i < considered; ++i)
        if (qrels.relevant(query_id, results[i].doc_uid)) ++relevant;
    std::size_t denominator = mode == PrecisionMode::FixedK ? k : considered;
    if (denominator == 0) return 0.0;
    return static_cast<double>(relevant) / static_cast<double>(denominator);
}

struct QueryResult {
    std::string query_id;
    double p_at_k = 0.0;
    std::vector<ScoredDocument> ranking;
};

struct EvalReport {
    std::string run_id;
    std::map<std::string, double> per_query; // query_id -> precision
    double mean_precision = 0.0;
    std::size_t vocabulary_size = 0;
    std::vector<std::string> skipped; // "query_id: reason"
};

// Per-query movement against the matrix baseline (the first run).
struct RunComparison {
    std::string run_id;
    std::string baseline_id;
    std::size_t better = 0;
    std::size_t equal = 0;
    std::size_t worse = 0;
    std::map<std::string, double> delta; // query_id -> precision - baseline precision
};

struct RunMatrixResult {
    std::vector<EvalReport> reports;
    std::vector<RunComparison> comparisons; // one per non-baseline run
    std::map<std::string, std::vector<QueryResult>> rankings; // run_id -> per-query rankings
};

// Evaluates each configuration over the same topics, building one index per
// distinct index-side flag pair and reusing it across runs that share it.
inline RunMatrixResult run_matrix(const std::vector<Document>& documents,
                                  const std::vector<Topic>& topics, const Qrels& qrels,
                                  const SemanticResourceSet& resources,
                                  const StopwordPolicy& stopwords,
                                  const std::vector<RunConfig>& runs, std::size_t k,
                                  PrecisionMode mode = PrecisionMode::FixedK,
                                  QueryField field = QueryField::Title) {
    RunMatrixResult result;
    if (runs.empty()) return result;

    std::map<std::string, std::pair<InvertedIndex, Scorer*>> cache;
    std::vector<std::unique_ptr<Scorer>> scorers;
    auto scorer_for = [&](const RunConfig& config) -> Scorer& {
        std::string key;
        key += config.index_fullforms ? '1' : '0';
        key += config.index_compounds ? '1' : '0';
        auto it = cache.find(key);
        if (it == cache.end()) {
            InvertedIndex index = build_index(documents, resources, stopwords, config);
            it = cache.emplace(key, std::make_pair(std::move(index), nullptr)).first;
            scorers.push_back(std::make_unique<Scorer>(it->second.first));
            it->second.second = scorers.back().get();
        }
        return *it->second.second;
    };

    for (const RunConfig& config : runs) {
        Scorer& scorer = scorer_for(config);
        EvalReport report;
        report.run_id = config.run_id;
        report.vocabulary_size = scorer.index().vocabulary.size();
        std::vector<QueryResult>& rankings = result.rankings[config.run_id];
        double total = 0.0;
        std::size_t evaluated = 0;
        for (const Topic& topic : topics) {
            if (!qrels.has_query(topic.id)) {
                report.skipped.push_back(topic.id + ": no relevance judgments");
                continue;
            }
            try {
                ReformulatedQuery rq =
                    reformulate(topic.id, topic_query_text(topic, field), stopwords, resources, config);
                QueryResult qr;
                qr.query_id = topic.id;
                qr.ranking = scorer.top_k(rq, k, config);
                qr.p_at_k = precision_at_k(qr.ranking, qrels, topic.id, k, mode);
                report.per_query[topic.id] = qr.p_at_k;
                total += qr.p_at_k;
                ++evaluated;
                rankings.push_back(std::move(qr));
            } catch (const Error& e) {
                report.skipped.push_back(topic.id + ": " + e.what());
            }
        }
        report.mean_precision = evaluated == 0 ? 0.0 : total / static_cast<double>(evaluated);
        result.reports.push_back(std::move(report));
    }

    const EvalReport& baseline = result.reports.front();
    for (std::size_t r = 1; r < result.reports.size(); ++r) {
        const EvalReport& report = result.reports[r];
        RunComparison cmp;
        cmp.run_id = report.run_id;
        cmp.baseline_id = baseline.run_id;
        for (const auto& [query_id, precision] : report.per_query) {
            auto base = baseline.per_query.find(query_id);
            if (base == baseline.per_query.end()) continue;
            double delta = precision - base->second;
            cmp.delta[query_id] = delta;
            if (delta > 0.0) ++cmp.better;
            else if (delta < 0.0) ++cmp.worse;
            else ++cmp.equal;
        }
        result.comparisons.push_back(std::move(cmp));
    }
    return result;
}

namespace detail {

inline std::string format_precision(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

} // namespace detail

inline void write_report_tsv(const EvalReport& report, std::ostream& out) {
    out << "run_id\tquery_id\tprecision\n";
    for (const auto& [query_id, precision] : report.per_query)
        out << report.run_id << "\t" << query_id << "\t" << detail::format_precision(precision)
            << "\n";
    out << report.run_id << "\tMEAN\t" << detail::format_precision(report.mean_precision) << "\n";
}

inline void write_summary_tsv(const RunMatrixResult& result, std::ostream& out) {
    out << "run_id\tqueries\tskipped\tmean_precision\tvocabulary\tbetter\tequal\tworse\n";
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const EvalReport& report = result.reports[i];
        out << report.run_id << "\t" << report.per_query.size() << "\t" << report.skipped.size()
            << "\t" << detail::format_precision(report.mean_precision) << "\t"
            << report.vocabulary_size;
        if (i == 0) {
            out << "\t-\t-\t-\n";
        } else {
            const RunComparison& cmp = result.comparisons[i - 1];
            out << "\t" << cmp.better << "\t" << cmp.equal << "\t" << cmp.worse << "\n";
        }
    }
}

// Long-format points for plotting score curves: one line per ranked document.
inline void write_plot_data(const RunMatrixResult& result, std::ostream& out) {
    out << "run_id\tquery_id\trank\tdoc_uid\tscore\n";
    for (const auto& [run_id, queries] : result.rankings) {
        for (const QueryResult& qr : queries) {
            std::size_t rank = 1;
            for (const ScoredDocument& doc : qr.ranking) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.6f", doc.score);
                out << run_id << "\t" << qr.query_id << "\t" << rank << "\t" << doc.doc_uid << "\t"
                    << buf << "\n";
                ++rank;
            }
        }
    }
}

} // namespace medir

#endif
