#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "medir/resources.hpp"
#include "support.hpp"

namespace {

medir::ResourcePaths write_resource_dir(const support::TempDir& dir,
                                        const std::string& acronyms,
                                        const std::string& synonyms,
                                        const std::string& metamap,
                                        const std::string& mrdef) {
    auto write = [&](const char* name, const std::string& body) {
        std::ofstream out(dir.path / name, std::ios::binary);
        out << body;
    };
    write("acronyms.tsv", acronyms);
    write("synonyms.tsv", synonyms);
    write("concepts_metamap.tsv", metamap);
    write("concepts_mrdef.tsv", mrdef);
    return medir::ResourcePaths::in_directory(dir.path);
}

} // namespace

TEST_CASE("resource keys are folded and stemmed, values folded only", "[resources]") {
    CHECK(medir::normalize_resource_key("Localized Prostate Cancer") ==
          "local prostat cancer");
    CHECK(medir::normalize_resource_key("MRSA") == "mrsa");
    CHECK(medir::normalize_resource_key("Robotic  Surgery!") == "robot surgeri");
    CHECK(medir::normalize_resource_key("...") == "");

    CHECK(medir::normalize_resource_value("Methicillin Resistant Staphylococcus Aureus") ==
          "methicillin resistant staphylococcus aureus");
    CHECK(medir::normalize_resource_value("Robot Assisted?") == "robot assisted");
    CHECK(medir::normalize_resource_value("vulnerate") == "vulnerate");
}

TEST_CASE("bundled lexicons load with expected counts and no warnings", "[resources]") {
    medir::ResourceLoadReport report;
    medir::SemanticResourceSet resources = medir::load_resources(
        medir::ResourcePaths::in_directory(support::fixture_path("resources")), &report);

    CHECK(report.acronym_entries == 5);
    CHECK(report.synonym_entries == 4);
    CHECK(report.metamap_concepts == 7);
    CHECK(report.mrdef_concepts == 5);
    CHECK(report.warnings.empty());

    const auto* mrsa = resources.lookup_acronym("mrsa");
    REQUIRE(mrsa != nullptr);
    CHECK(*mrsa ==
          std::vector<std::string>{"methicillin resistant staphylococcus aureus"});

    const auto* arv = resources.lookup_acronym("arv");
    REQUIRE(arv != nullptr);
    CHECK(arv->size() == 2);
    CHECK((*arv)[0] == "adelaide river virus");
    CHECK((*arv)[1] == "average rectified value");

    const auto* wound = resources.lookup_synonyms("wound");
    REQUIRE(wound != nullptr);
    CHECK(*wound == std::vector<std::string>{"vulnerat"});

    const auto* lpc = resources.lookup_synonyms("local prostat cancer");
    REQUIRE(lpc != nullptr);
    CHECK(*lpc == std::vector<std::string>{"suspect prostat cancer"});

    const auto* rs = resources.lookup_synonyms("robot surgeri");
    REQUIRE(rs != nullptr);
    CHECK(*rs == std::vector<std::string>{"robot assist surgeri"});

    CHECK(resources.lookup_acronym("wound") == nullptr);
    CHECK(resources.lookup_synonyms("mrsa") == nullptr);
}

TEST_CASE("medical recognition spans both concept tables", "[resources]") {
    medir::SemanticResourceSet resources = support::fixture_resources();
    CHECK(resources.recognize_medical("wound"));
    CHECK(resources.recognize_medical("infect"));
    CHECK(resources.recognize_medical("robot surgeri"));
    CHECK(resources.recognize_medical("local prostat cancer"));
    CHECK(resources.recognize_medical("prostat cancer"));
    CHECK(resources.recognize_medical("bacteremia"));
    CHECK_FALSE(resources.recognize_medical("zzz"));
    CHECK_FALSE(resources.recognize_medical(""));
}

TEST_CASE("self referential synonyms are skipped with a warning", "[resources]") {
    medir::SemanticResourceSet resources;
    std::vector<std::string> warnings;
    CHECK_FALSE(resources.add_synonym("wound", "Wound", &warnings));
    CHECK_FALSE(resources.add_synonym("wound", "wounds", &warnings));
    CHECK(resources.synonym_table.empty());
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("synonym of itself") != std::string::npos);

    CHECK(resources.add_synonym("wound", "vulnerate", &warnings));
    REQUIRE(resources.lookup_synonyms("wound") != nullptr);
}

TEST_CASE("duplicate table entries merge with a warning", "[resources]") {
    medir::SemanticResourceSet resources;
    std::vector<std::string> warnings;
    CHECK(resources.add_acronym("MRSA", "Methicillin Resistant Staphylococcus Aureus",
                                &warnings));
    CHECK_FALSE(resources.add_acronym("mrsa",
                                      "methicillin resistant staphylococcus aureus",
                                      &warnings));
    REQUIRE(resources.lookup_acronym("mrsa") != nullptr);
    CHECK(resources.lookup_acronym("mrsa")->size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("duplicate") != std::string::npos);

    CHECK(resources.add_acronym("mrsa", "another expansion", &warnings));
    CHECK(resources.lookup_acronym("mrsa")->size() == 2);
}

TEST_CASE("mrdef definitions are kept only when present", "[resources]") {
    medir::SemanticResourceSet resources;
    resources.add_mrdef_concept("prostate", "a gland of the male reproductive system");
    resources.add_mrdef_concept("cancer", "");
    CHECK(resources.mrdef_definitions.count("prostat") == 1);
    CHECK(resources.mrdef_definitions.count("cancer") == 0);
    CHECK(resources.recognize_medical("prostat"));
    CHECK(resources.recognize_medical("cancer"));
}

TEST_CASE("tsv loader accepts comments, blanks and crlf", "[resources]") {
    support::TempDir dir("medir_res");
    auto paths = write_resource_dir(dir,
                                    "# acronym table\r\n\r\nuti\tUrinary Tract Infection\r\n",
                                    "# none\n", "# none\n", "# none\n");
    medir::ResourceLoadReport report;
    medir::SemanticResourceSet resources = medir::load_resources(paths, &report);
    CHECK(report.acronym_entries == 1);
    REQUIRE(resources.lookup_acronym("uti") != nullptr);
    CHECK(resources.lookup_acronym("uti")->front() == "urinary tract infection");
}

TEST_CASE("tsv loader rejects wrong column counts with file and line", "[resources]") {
    support::TempDir dir("medir_res");
    auto paths = write_resource_dir(dir, "# ok\nmrsa\tfull\textra\n", "# none\n",
                                    "# none\n", "# none\n");
    try {
        medir::load_resources(paths);
        FAIL("expected SchemaError");
    } catch (const medir::SchemaError& e) {
        std::string what = e.what();
        CHECK(what.find("acronyms.tsv") != std::string::npos);
        CHECK(what.find(":2:") != std::string::npos);
        CHECK(what.find("3") != std::string::npos);
    }
}

TEST_CASE("tsv loader rejects empty mandatory columns", "[resources]") {
    support::TempDir dir("medir_res");
    auto paths =
        write_resource_dir(dir, "mrsa\t  \n", "# none\n", "# none\n", "# none\n");
    REQUIRE_THROWS_AS(medir::load_resources(paths), medir::SchemaError);
}

TEST_CASE("tsv loader allows an empty definition column", "[resources]") {
    support::TempDir dir("medir_res");
    auto paths = write_resource_dir(dir, "# none\n", "# none\n", "# none\n",
                                    "bacteremia\t\nprostate\tmale gland\n");
    medir::SemanticResourceSet resources = medir::load_resources(paths);
    CHECK(resources.concept_table_mrdef.size() == 2);
    CHECK(resources.mrdef_definitions.count("bacteremia") == 0);
    CHECK(resources.mrdef_definitions.count("prostat") == 1);
}

TEST_CASE("tsv loader rejects keys that normalize to nothing", "[resources]") {
    support::TempDir dir("medir_res");
    auto paths =
        write_resource_dir(dir, "# none\n", "# none\n", "...\n", "# none\n");
    try {
        medir::load_resources(paths);
        FAIL("expected SchemaError");
    } catch (const medir::SchemaError& e) {
        CHECK(std::string(e.what()).find("normalizes to nothing") != std::string::npos);
    }
}

TEST_CASE("missing resource file raises an io error naming the path", "[resources]") {
    medir::ResourcePaths paths = medir::ResourcePaths::in_directory("/nonexistent/resdir");
    try {
        medir::load_resources(paths);
        FAIL("expected IoError");
    } catch (const medir::IoError& e) {
        CHECK(std::string(e.what()).find("acronyms.tsv") != std::string::npos);
    }
}
