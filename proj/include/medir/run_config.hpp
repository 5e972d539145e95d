#ifndef MEDIR_RUN_CONFIG_HPP
#define MEDIR_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medir {

// Feature toggles for one experiment. The numbered presets form an
// incremental ladder: each one keeps the previous run's switches and adds
// its own.
struct RunConfig {
    std::string run_id = "custom";
    bool index_fullforms = false;
    bool index_compounds = false;
    bool expand_fullforms = false;
    bool expand_compounds = false;
    bool heuristic_weighting = false;
    bool expand_synonyms = false;

    std::string flags_string() const {
        std::string s;
        s += index_fullforms ? '1' : '0';
        s += index_compounds ? '1' : '0';
        s += expand_fullforms ? '1' : '0';
        s += expand_compounds ? '1' : '0';
        s += heuristic_weighting ? '1' : '0';
        s += expand_synonyms ? '1' : '0';
        return s;
    }

    std::uint64_t config_hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : flags_string()) {
            h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
            h *= 1099511628211ull;
        }
        return h;
    }

    bool same_index_side(const RunConfig& other) const {
        return index_fullforms == other.index_fullforms && index_compounds == other.index_compounds;
    }

    static RunConfig run1() {
        RunConfig c;
        c.run_id = "RUN1";
        return c;
    }

    static RunConfig run2() {
        RunConfig c = run1();
        c.run_id = "RUN2";
        c.index_fullforms = true;
        c.expand_fullforms = true;
        return c;
    }

    static RunConfig run3() {
        RunConfig c = run2();
        c.run_id = "RUN3";
        c.index_compounds = true;
        c.expand_compounds = true;
        return c;
    }

    static RunConfig run4() {
        RunConfig c = run3();
        c.run_id = "RUN4";
        c.heuristic_weighting = true;
        return c;
    }

    static RunConfig run5() {
        RunConfig c = run4();
        c.run_id = "RUN5";
        c.expand_synonyms = true;
        return c;
    }

    static std::optional<RunConfig> named(std::string_view name) {
        if (name == "RUN1" || name == "run1") return run1();
        if (name == "RUN2" || name == "run2") return run2();
        if (name == "RUN3" || name == "run3") return run3();
        if (name == "RUN4" || name == "run4") return run4();
        if (name == "RUN5" || name == "run5") return run5();
        return std::nullopt;
    }

    static std::vector<RunConfig> ladder() {
        return {run1(), run2(), run3(), run4(), run5()};
    }
};

} // namespace medir

#endif
