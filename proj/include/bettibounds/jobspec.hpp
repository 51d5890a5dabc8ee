#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bettibounds/polynomial.hpp"

namespace bettibounds {

/// One batch job from a line-oriented "key = value" spec file with [job]
/// headers.  Formulas are quoted verbatim in the module grammar.  Unknown
/// keys are rejected.
struct JobSpec {
    enum class Mode { Bound, Verify, Construct };

    std::string name;  // optional label, defaults to job-<index>
    Mode mode = Mode::Bound;
    std::string measure = "degree";
    std::optional<std::string> measure_file;  // declarative user measure to load
    std::optional<std::string> formula;
    std::optional<std::string> quantified;
    std::size_t free_dim = 0;
    std::optional<std::size_t> n;        // ambient dimension override
    std::optional<std::string> theorem;  // route override
    std::map<std::string, std::uint64_t> o_constants;
    Rat box = 2;
    std::size_t res = 64;
    Rat lambda = Rat(1, 64);
    std::size_t m = 1;
    std::string field = "gf2";          // gf2 | gfp:<prime>
    std::string construct_what = "both";  // t | xprime | both
    std::size_t grid_points = 17;
    std::optional<std::string> out;
};

const char* mode_name(JobSpec::Mode mode);

/// Parses every [job] section; throws std::invalid_argument with a
/// file:line prefix on malformed input, unknown keys, or missing
/// mode-required fields.
std::vector<JobSpec> parse_jobspec(std::istream& in, const std::string& origin);
std::vector<JobSpec> parse_jobspec_path(const std::string& path);

/// Parses "p/q" or "k" into an exact rational.
Rat parse_rational(const std::string& text);

}  // namespace bettibounds
