#ifndef MEDIR_RESOURCES_HPP
#define MEDIR_RESOURCES_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "text.hpp"

namespace medir {

// Lookup keys are folded and stemmed so they compose with the text pipeline.
inline std::string normalize_resource_key(std::string_view surface) {
    std::vector<std::string> tokens = fold_and_tokenize(surface);
    for (std::string& token : tokens) token = porter_stem(token);
    return join_tokens(tokens);
}

// Stored values (full forms, synonyms) are folded only. Stemming them would
// mangle multiword phrases that are meant to be added to queries verbatim.
inline std::string normalize_resource_value(std::string_view surface) {
    return join_tokens(fold_and_tokenize(surface));
}

struct ResourcePaths {
    std::filesystem::path acronyms;
    std::filesystem::path synonyms;
    std::filesystem::path concepts_metamap;
    std::filesystem::path concepts_mrdef;

    static ResourcePaths in_directory(const std::filesystem::path& dir) {
        return {dir / "acronyms.tsv", dir / "synonyms.tsv",
                dir / "concepts_metamap.tsv", dir / "concepts_mrdef.tsv"};
    }
};

struct ResourceLoadReport {
    std::size_t acronym_entries = 0;
    std::size_t synonym_entries = 0;
    std::size_t metamap_concepts = 0;
    std::size_t mrdef_concepts = 0;
    std::vector<std::string> warnings;
};

class SemanticResourceSet {
public:
    std::map<std::string, std::vector<std::string>> acronym_table;
    std::map<std::string, std::vector<std::string>> synonym_table;
    std::set<std::string> concept_table_metamap;
    std::set<std::string> concept_table_mrdef;
    std::map<std::string, std::string> mrdef_definitions;

    const std::vector<std::string>* lookup_acronym(const std::string& term) const {
        auto it = acronym_table.find(term);
        return it == acronym_table.end() ? nullptr : &it->second;
    }

    const std::vector<std::string>* lookup_synonyms(const std::string& term) const {
        auto it = synonym_table.find(term);
        return it == synonym_table.end() ? nullptr : &it->second;
    }

    // Membership in either concept table marks a term as medical.
    bool recognize_medical(const std::string& term) const {
        if (term.empty()) return false;
        return concept_table_metamap.count(term) > 0 || concept_table_mrdef.count(term) > 0;
    }

    bool add_acronym(std::string_view surface, std::string_view full_form,
                     std::vector<std::string>* warnings = nullptr) {
        return add_mapping(acronym_table, surface, full_form, "acronym", warnings);
    }

    bool add_synonym(std::string_view surface, std::string_view value,
                     std::vector<std::string>* warnings = nullptr) {
        std::string key = normalize_resource_key(surface);
        std::string normalized = normalize_resource_value(value);
        if (!key.empty() && (normalized == key || normalize_resource_key(value) == key)) {
            if (warnings)
                warnings->push_back("synonym of itself skipped: " + std::string(surface));
            return false;
        }
        return add_mapping(synonym_table, surface, value, "synonym", warnings);
    }

    void add_metamap_concept(std::string_view surface) {
        std::string key = normalize_resource_key(surface);
        if (!key.empty()) concept_table_metamap.insert(key);
    }

    void add_mrdef_concept(std::string_view surface, std::string_view definition) {
        std::string key = normalize_resource_key(surface);
        if (key.empty()) return;
        concept_table_mrdef.insert(key);
        if (!definition.empty()) mrdef_definitions.emplace(key, std::string(definition));
    }

private:
    static bool add_mapping(std::map<std::string, std::vector<std::string>>& table,
                            std::string_view surface, std::string_view value,
                            const char* kind, std::vector<std::string>* warnings) {
        std::string key = normalize_resource_key(surface);
        std::string normalized = normalize_resource_value(value);
        if (key.empty() || normalized.empty()) return false;
        std::vector<std::string>& values = table[key];
        for (const std::string& existing : values) {
            if (existing == normalized) {
                if (warnings)
                    warnings->push_back("duplicate " + std::string(kind) + " entry merged: " +
                                        key + " -> " + normalized);
                return false;
            }
        }
        values.push_back(std::move(normalized));
        return true;
    }
};

namespace detail {

template <typename RowFn>
inline void for_each_tsv_row(const std::filesystem::path& path, std::size_t expected_columns,
                             bool allow_empty_last, RowFn&& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open resource file: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::vector<std::string> columns;
        std::size_t pos = 0;
        while (true) {
            std::size_t tab = line.find('\t', pos);
            if (tab == std::string::npos) {
                columns.push_back(line.substr(pos));
                break;
            }
            columns.push_back(line.substr(pos, tab - pos));
            pos = tab + 1;
        }
        if (columns.size() != expected_columns)
            throw SchemaError(path.string(), line_no,
                              "expected " + std::to_string(expected_columns) + " columns, got " +
                                  std::to_string(columns.size()));
        for (std::size_t i = 0; i < columns.size(); ++i) {
            bool may_be_empty = allow_empty_last && i + 1 == columns.size();
            if (columns[i].find_first_not_of(" \t") == std::string::npos && !may_be_empty)
                throw SchemaError(path.string(), line_no,
                                  "empty column " + std::to_string(i + 1));
        }
        fn(columns, line_no);
    }
}

} // namespace detail

inline SemanticResourceSet load_resources(const ResourcePaths& paths,
                                          ResourceLoadReport* report = nullptr) {
    SemanticResourceSet resources;
    ResourceLoadReport local;
    ResourceLoadReport& rep = report ? *report : local;

    detail::for_each_tsv_row(paths.acronyms, 2, false, [&](const auto& cols, std::size_t line_no) {
        if (normalize_resource_key(cols[0]).empty())
            throw SchemaError(paths.acronyms.string(), line_no, "key normalizes to nothing");
        if (resources.add_acronym(cols[0], cols[1], &rep.warnings)) ++rep.acronym_entries;
    });
    detail::for_each_tsv_row(paths.synonyms, 2, false, [&](const auto& cols, std::size_t line_no) {
        if (normalize_resource_key(cols[0]).empty())
            throw SchemaError(paths.synonyms.string(), line_no, "key normalizes to nothing");
        if (resources.add_synonym(cols[0], cols[1], &rep.warnings)) ++rep.synonym_entries;
    });
    detail::for_each_tsv_row(paths.concepts_metamap, 1, false, [&](const auto& cols, std::size_t line_no) {
        if (normalize_resource_key(cols[0]).empty())
            throw SchemaError(paths.concepts_metamap.string(), line_no, "key normalizes to nothing");
        resources.add_metamap_concept(cols[0]);
    });
    detail::for_each_tsv_row(paths.concepts_mrdef, 2, true, [&](const auto& cols, std::size_t line_no) {
        if (normalize_resource_key(cols[0]).empty())
            throw SchemaError(paths.concepts_mrdef.string(), line_no, "key normalizes to nothing");
        resources.add_mrdef_concept(cols[0], cols[1]);
    });
    rep.metamap_concepts = resources.concept_table_metamap.size();
    rep.mrdef_concepts = resources.concept_table_mrdef.size();
    return resources;
}

} // namespace medir

#endif
