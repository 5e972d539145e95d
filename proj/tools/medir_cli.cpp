#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "medir/medir.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::vector<std::string> corpus;
    std::string resources_dir;
    std::string stopwords_file;
    bool augment_stopwords = false;
};

std::vector<fs::path> gather_corpus_files(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const std::string& input : inputs) {
        fs::path path(input);
        if (fs::is_directory(path)) {
            for (const auto& entry : fs::recursive_directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".dat")
                    files.push_back(entry.path());
        } else if (fs::is_regular_file(path)) {
            files.push_back(path);
        } else {
            throw medir::IoError("corpus path does not exist: " + input);
        }
    }
    if (files.empty()) throw medir::IoError("no corpus files found");
    return files;
}

std::vector<medir::Document> load_documents(const CommonOptions& opts,
                                            std::vector<medir::CorpusIssue>* issues = nullptr) {
    medir::CorpusParseResult parsed = medir::load_corpus_files(gather_corpus_files(opts.corpus));
    if (issues) *issues = parsed.issues;
    for (const auto& issue : parsed.issues)
        std::cerr << "warning: corpus offset " << issue.offset << ": " << issue.detail
                  << (issue.last_good_uid.empty() ? "" : " (after " + issue.last_good_uid + ")")
                  << "\n";
    return medir::extract_all(parsed.documents);
}

medir::SemanticResourceSet load_resource_dir(const std::string& dir,
                                             medir::ResourceLoadReport* report = nullptr) {
    return medir::load_resources(medir::ResourcePaths::in_directory(dir), report);
}

medir::StopwordPolicy make_stopword_policy(const CommonOptions& opts,
                                           const std::vector<medir::Document>* docs) {
    medir::StopwordPolicy policy;
    if (!opts.stopwords_file.empty())
        policy.static_list = medir::load_stopword_file(opts.stopwords_file);
    if (opts.augment_stopwords) {
        if (!docs) throw medir::Error("--augment-stopwords needs a corpus");
        std::map<std::string, double> idfs = medir::surface_token_idfs(*docs);
        policy = medir::augment_stopwords(idfs, std::move(policy.static_list));
        std::cerr << "stopword augmentation: threshold " << policy.idf_threshold << ", "
                  << policy.augmented_list.size() << " corpus-specific words\n";
    }
    return policy;
}

medir::RunConfig parse_run(const std::string& name) {
    auto config = medir::RunConfig::named(name);
    if (!config) throw CLI::ValidationError("--run", "unknown run '" + name + "' (use RUN1..RUN5)");
    return *config;
}

void print_query(const medir::ReformulatedQuery& rq) {
    std::printf("|q|=%llu |rq|=%llu\n", static_cast<unsigned long long>(rq.q_len),
                static_cast<unsigned long long>(rq.rq_len));
    std::printf("%-45s %-18s %5s %9s %8s\n", "term", "category", "count", "weight", "display");
    auto print_term = [](const medir::WeightedQueryTerm& t) {
        std::printf("%-45s %-18s %5llu %9.6f %8s\n", t.term.c_str(),
                    medir::to_string(t.category), static_cast<unsigned long long>(t.count),
                    t.weight, medir::format_weight(t.weight).c_str());
    };
    for (const auto& t : rq.original_terms) print_term(t);
    for (const auto& t : rq.expansion_terms) print_term(t);
}

int cmd_index(const CommonOptions& common, const std::string& run_name,
              const std::string& index_dir) {
    std::vector<medir::Document> docs = load_documents(common);
    medir::SemanticResourceSet resources = load_resource_dir(common.resources_dir);
    medir::StopwordPolicy stopwords = make_stopword_policy(common, &docs);
    medir::RunConfig config = parse_run(run_name);

    medir::InvertedIndex index = medir::build_index(docs, resources, stopwords, config);
    medir::persist_index(index, index_dir);
    std::printf("indexed %llu documents, %zu terms (%s) -> %s\n",
                static_cast<unsigned long long>(index.total_documents), index.vocabulary.size(),
                config.run_id.c_str(), index_dir.c_str());
    return 0;
}

int cmd_search(const std::string& index_dir, const CommonOptions& common,
               const std::string& run_name, const std::string& query_text, std::size_t k,
               const std::string& run_tag, const std::string& trec_file) {
    medir::InvertedIndex index = medir::load_index(index_dir);
    medir::SemanticResourceSet resources = load_resource_dir(common.resources_dir);
    medir::StopwordPolicy stopwords = make_stopword_policy(common, nullptr);

    medir::RunConfig config = index.build_config;
    if (!run_name.empty()) {
        config = parse_run(run_name);
        if (!config.same_index_side(index.build_config))
            std::cerr << "warning: index was built as " << index.build_config.run_id
                      << "; index-side switches differ from " << config.run_id << "\n";
    }

    medir::QueryAnalysis analysis;
    medir::ReformulatedQuery rq =
        medir::reformulate("Q1", query_text, stopwords, resources, config, &analysis);
    print_query(rq);

    medir::Scorer scorer(index);
    std::vector<medir::ScoredDocument> results = scorer.top_k(rq, k, config);
    std::printf("\n%zu result(s)\n", results.size());
    medir::write_trec_run(std::cout, rq.query_id, results, run_tag);
    if (!trec_file.empty()) {
        std::ofstream out(trec_file, std::ios::binary);
        if (!out) throw medir::IoError("cannot write " + trec_file);
        medir::write_trec_run(out, rq.query_id, results, run_tag);
    }
    return 0;
}

void write_outputs(const medir::RunMatrixResult& result, const std::string& out_dir) {
    if (out_dir.empty()) return;
    fs::create_directories(out_dir);
    for (const auto& report : result.reports) {
        std::ofstream out(fs::path(out_dir) / ("report_" + report.run_id + ".tsv"),
                          std::ios::binary);
        medir::write_report_tsv(report, out);
    }
    {
        std::ofstream out(fs::path(out_dir) / "summary.tsv", std::ios::binary);
        medir::write_summary_tsv(result, out);
    }
    {
        std::ofstream out(fs::path(out_dir) / "plot_data.tsv", std::ios::binary);
        medir::write_plot_data(result, out);
    }
    for (const auto& [run_id, queries] : result.rankings) {
        std::ofstream out(fs::path(out_dir) / ("results_" + run_id + ".trec"), std::ios::binary);
        for (const auto& qr : queries) medir::write_trec_run(out, qr.query_id, qr.ranking, run_id);
    }
}

int run_eval(const CommonOptions& common, const std::vector<medir::RunConfig>& runs,
             const std::string& topics_file, const std::string& qrels_file, std::size_t k,
             const std::string& precision_mode, const std::string& query_field,
             const std::string& out_dir) {
    std::vector<medir::Document> docs = load_documents(common);
    medir::SemanticResourceSet resources = load_resource_dir(common.resources_dir);
    medir::StopwordPolicy stopwords = make_stopword_policy(common, &docs);
    std::vector<medir::Topic> topics = medir::parse_topics_file(topics_file);
    medir::Qrels qrels = medir::parse_qrels_file(qrels_file);

    medir::PrecisionMode mode = precision_mode == "retrieved" ? medir::PrecisionMode::Retrieved
                                                              : medir::PrecisionMode::FixedK;
    medir::QueryField field = medir::parse_query_field(query_field);

    medir::RunMatrixResult result =
        medir::run_matrix(docs, topics, qrels, resources, stopwords, runs, k, mode, field);

    bool any_evaluated = false;
    for (const auto& report : result.reports) {
        for (const auto& skip : report.skipped)
            std::cerr << "note: " << report.run_id << " skipped " << skip << "\n";
        if (!report.per_query.empty()) any_evaluated = true;
    }
    if (!any_evaluated) throw medir::Error("no evaluable queries (no topic ids match the qrels)");

    medir::write_summary_tsv(result, std::cout);
    write_outputs(result, out_dir);
    if (!out_dir.empty()) std::printf("reports written to %s\n", out_dir.c_str());
    return 0;
}

int cmd_resources_validate(const std::string& dir) {
    medir::ResourceLoadReport report;
    medir::SemanticResourceSet resources = load_resource_dir(dir, &report);
    std::printf("acronyms: %zu entries across %zu short forms\n", report.acronym_entries,
                resources.acronym_table.size());
    std::printf("synonyms: %zu entries across %zu terms\n", report.synonym_entries,
                resources.synonym_table.size());
    std::printf("concepts: %zu recognized (%zu + %zu)\n",
                resources.concept_table_metamap.size() + resources.concept_table_mrdef.size(),
                report.metamap_concepts, report.mrdef_concepts);
    for (const auto& warning : report.warnings) std::printf("warning: %s\n", warning.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic medical document search"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string run_name = "RUN1";
    std::string index_dir;
    std::string topics_file, qrels_file, out_dir;
    std::string query_text, run_tag = "medir", trec_file;
    std::string precision_mode = "fixed", query_field = "title";
    std::size_t k = 10;
    std::vector<std::string> run_names;

    auto add_resource_opts = [&](CLI::App* cmd, bool with_corpus) {
        if (with_corpus)
            cmd->add_option("--corpus", common.corpus, "corpus .dat file or directory")
                ->required()
                ->expected(-1);
        cmd->add_option("--resources", common.resources_dir, "directory with the lexicon tsv files")
            ->required();
        cmd->add_option("--stopwords", common.stopwords_file, "stopword list, one word per line");
        if (with_corpus)
            cmd->add_flag("--augment-stopwords", common.augment_stopwords,
                          "extend the list with low-idf corpus words");
    };

    CLI::App* index_cmd = app.add_subcommand("index", "build and persist an inverted index");
    add_resource_opts(index_cmd, true);
    index_cmd->add_option("--run", run_name, "configuration preset RUN1..RUN5");
    index_cmd->add_option("--index", index_dir, "output index directory")->required();

    CLI::App* search_cmd = app.add_subcommand("search", "run one query against a persisted index");
    search_cmd->add_option("--index", index_dir, "index directory")->required();
    add_resource_opts(search_cmd, false);
    search_cmd->add_option("--run", run_name, "override the index's configuration preset")
        ->default_str("");
    run_name = ""; // search defaults to the persisted configuration
    search_cmd->add_option("--query", query_text, "query text")->required();
    search_cmd->add_option("--k", k, "results to return");
    search_cmd->add_option("--run-tag", run_tag, "tag column for result lines");
    search_cmd->add_option("--trec", trec_file, "also write result lines to this file");

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one configuration over topics");
    add_resource_opts(eval_cmd, true);
    eval_cmd->add_option("--topics", topics_file, "topics xml file")->required();
    eval_cmd->add_option("--qrels", qrels_file, "relevance judgments")->required();
    eval_cmd->add_option("--run", run_name, "configuration preset RUN1..RUN5");
    eval_cmd->add_option("--k", k, "precision cutoff");
    eval_cmd->add_option("--precision", precision_mode, "fixed or retrieved denominator")
        ->check(CLI::IsMember({"fixed", "retrieved"}));
    eval_cmd->add_option("--query-field", query_field, "title, desc or title+desc");
    eval_cmd->add_option("--out", out_dir, "directory for report files");

    CLI::App* runs_cmd = app.add_subcommand("runs", "evaluate a ladder of configurations");
    add_resource_opts(runs_cmd, true);
    runs_cmd->add_option("--topics", topics_file, "topics xml file")->required();
    runs_cmd->add_option("--qrels", qrels_file, "relevance judgments")->required();
    runs_cmd->add_option("--run", run_names, "presets to evaluate (default RUN1..RUN5)");
    runs_cmd->add_option("--k", k, "precision cutoff");
    runs_cmd->add_option("--precision", precision_mode, "fixed or retrieved denominator")
        ->check(CLI::IsMember({"fixed", "retrieved"}));
    runs_cmd->add_option("--query-field", query_field, "title, desc or title+desc");
    runs_cmd->add_option("--out", out_dir, "directory for report files");

    CLI::App* resources_cmd = app.add_subcommand("resources", "lexicon utilities");
    resources_cmd->require_subcommand(1);
    CLI::App* validate_cmd =
        resources_cmd->add_subcommand("validate", "load the lexicons and report their shape");
    std::string validate_dir;
    validate_cmd->add_option("--resources", validate_dir, "directory with the lexicon tsv files")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (index_cmd->parsed())
            return cmd_index(common, run_name.empty() ? "RUN1" : run_name, index_dir);
        if (search_cmd->parsed())
            return cmd_search(index_dir, common, run_name, query_text, k, run_tag, trec_file);
        if (eval_cmd->parsed())
            return run_eval(common, {parse_run(run_name.empty() ? "RUN1" : run_name)}, topics_file,
                            qrels_file, k, precision_mode, query_field, out_dir);
        if (runs_cmd->parsed()) {
            std::vector<medir::RunConfig> runs;
            if (run_names.empty()) {
                runs = medir::RunConfig::ladder();
            } else {
                for (const std::string& name : run_names) runs.push_back(parse_run(name));
            }
            return run_eval(common, runs, topics_file, qrels_file, k, precision_mode, query_field,
                            out_dir);
        }
        if (validate_cmd->parsed()) return cmd_resources_validate(validate_dir);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const medir::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
