#include "bettibounds/jobspec.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bettibounds {

const char* mode_name(JobSpec::Mode mode) {
    switch (mode) {
        case JobSpec::Mode::Bound: return "bound";
        case JobSpec::Mode::Verify: return "verify";
        case JobSpec::Mode::Construct: return "construct";
    }
    return "?";
}

Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto check_digits = [&](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("malformed rational: " + text);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])) && !(i == 0 && s[i] == '-'))
                throw std::invalid_argument("malformed rational: " + text);
    };
    if (slash == std::string::npos) {
        check_digits(text);
        return Rat(Nat(text));
    }
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    check_digits(num);
    check_digits(den);
    if (Nat(den) == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(Nat(num), Nat(den));
}

namespace {

struct Line {
    std::string key;
    std::string value;
    std::size_t number;
    bool is_header;
};

std::size_t parse_size(const std::string& where, const std::string& value) {
    try {
        const long v = std::stol(value);
        if (v < 0) throw std::invalid_argument("negative");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a non-negative integer, got '" + value + "'");
    }
}

std::string unquote(const std::string& where, const std::string& value) {
    if (value.size() < 2 || value.front() != '"' || value.back() != '"')
        throw std::invalid_argument(where + ": formulas must be quoted verbatim");
    return value.substr(1, value.size() - 2);
}

void apply_key(JobSpec& job, const std::string& where, const std::string& key,
               const std::string& value) {
    if (key == "name") job.name = value;
    else if (key == "mode") {
        if (value == "bound") job.mode = JobSpec::Mode::Bound;
        else if (value == "verify") job.mode = JobSpec::Mode::Verify;
        else if (value == "construct") job.mode = JobSpec::Mode::Construct;
        else throw std::invalid_argument(where + ": unknown mode '" + value + "'");
    } else if (key == "measure") job.measure = value;
    else if (key == "measure_file") job.measure_file = value;
    else if (key == "formula") job.formula = unquote(where, value);
    else if (key == "quantified") job.quantified = unquote(where, value);
    else if (key == "free_dim") job.free_dim = parse_size(where, value);
    else if (key == "n") job.n = parse_size(where, value);
    else if (key == "theorem") job.theorem = value;
    else if (key.rfind("o_const.", 0) == 0) {
        const std::string name = key.substr(8);
        if (name.empty()) throw std::invalid_argument(where + ": o_const needs a name");
        const std::size_t v = parse_size(where, value);
        if (v < 1) throw std::invalid_argument(where + ": O-constants must be >= 1");
        job.o_constants[name] = v;
    } else if (key == "box") job.box = parse_rational(value);
    else if (key == "res") job.res = parse_size(where, value);
    else if (key == "lambda") job.lambda = parse_rational(value);
    else if (key == "m") job.m = parse_size(where, value);
    else if (key == "field") job.field = value;
    else if (key == "construct") job.construct_what = value;
    else if (key == "grid") job.grid_points = parse_size(where, value);
    else if (key == "out") job.out = value;
    else throw std::invalid_argument(where + ": unknown key '" + key + "'");
}

void validate_job(const JobSpec& job, const std::string& where) {
    switch (job.mode) {
        case JobSpec::Mode::Bound:
            if (!job.formula && !job.quantified)
                throw std::invalid_argument(where + ": bound mode needs 'formula' or 'quantified'");
            if (job.formula && job.quantified)
                throw std::invalid_argument(where + ": give either 'formula' or 'quantified', not both");
            break;
        case JobSpec::Mode::Verify:
            if (!job.formula) throw std::invalid_argument(where + ": verify mode needs 'formula'");
            break;
        case JobSpec::Mode::Construct:
            if (!job.formula) throw std::invalid_argument(where + ": construct mode needs 'formula'");
            if (job.construct_what != "t" && job.construct_what != "xprime" &&
                job.construct_what != "both")
                throw std::invalid_argument(where + ": construct must be t, xprime, or both");
            break;
    }
    if (job.field != "gf2" && job.field.rfind("gfp:", 0) != 0)
        throw std::invalid_argument(where + ": field must be gf2 or gfp:<prime>");
    if (job.res < 2 || job.res > 2048)
        throw std::invalid_argument(where + ": res out of range [2, 2048]");
    if (job.grid_points < 2) throw std::invalid_argument(where + ": grid needs >= 2 points");
    if (!(job.box > 0)) throw std::invalid_argument(where + ": box radius must be positive");
}

}  // namespace

std::vector<JobSpec> parse_jobspec(std::istream& in, const std::string& origin) {
    std::vector<JobSpec> jobs;
    std::string raw;
    std::size_t lineno = 0;
    bool in_job = false;
    std::size_t job_start_line = 0;

    auto finish = [&]() {
        if (!in_job) return;
        const std::string where = origin + ":" + std::to_string(job_start_line);
        JobSpec& job = jobs.back();
        if (job.name.empty()) job.name = "job-" + std::to_string(jobs.size());
        validate_job(job, where);
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        // '#' inside a quoted formula is not a comment start.
        if (hash != std::string::npos && line.find('"') == std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string trimmed = line.substr(b, e - b + 1);
        const std::string where = origin + ":" + std::to_string(lineno);

        if (trimmed == "[job]") {
            finish();
            jobs.emplace_back();
            in_job = true;
            job_start_line = lineno;
            continue;
        }
        if (!in_job) throw std::invalid_argument(where + ": expected [job] header before keys");
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected key = value");
        const std::string key = trimmed.substr(0, trimmed.find_last_not_of(" \t", eq - 1) + 1);
        const auto vstart = trimmed.find_first_not_of(" \t", eq + 1);
        const std::string value = vstart == std::string::npos ? "" : trimmed.substr(vstart);
        apply_key(jobs.back(), where, key, value);
    }
    finish();
    if (jobs.empty()) throw std::invalid_argument(origin + ": no [job] sections found");
    return jobs;
}

std::vector<JobSpec> parse_jobspec_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open job file: " + path);
    return parse_jobspec(in, path);
}

}  // namespace bettibounds
