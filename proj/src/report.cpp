#include "bettibounds/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bettibounds {

namespace {

Json betti_to_json(const BettiVector& bv) {
    Json arr = Json::array();
    for (const Nat& r : bv.ranks) arr.push_back(r.str());
    return arr;
}

Json job_echo(const JobSpec& job) {
    Json j;
    j["name"] = job.name;
    j["mode"] = mode_name(job.mode);
    j["measure"] = job.measure;
    if (job.formula) j["formula"] = *job.formula;
    if (job.quantified) {
        j["quantified"] = *job.quantified;
        j["free_dim"] = job.free_dim;
    }
    if (job.theorem) j["theorem_override"] = *job.theorem;
    return j;
}

}  // namespace

Json bound_to_json(const Bound& bound) {
    Json j;
    j["theorem"] = bound.provenance.theorem;
    Json inputs = Json::object();
    for (const auto& [k, v] : bound.provenance.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    Json consts = Json::object();
    for (const auto& [k, v] : bound.provenance.o_constants) consts[k] = v;
    j["o_constants"] = consts;
    j["value"] = bound.value.str();
    j["trace"] = bound.provenance.trace;
    return j;
}

Json bound_report(const JobSpec& job, const RouteResult& route, std::size_t n) {
    Json j;
    j["schema"] = "bettibounds.report.v1";
    j["job"] = job_echo(job);
    j["n"] = n;
    j["set_class"] = set_class_name(route.set_class);
    j["route"] = route.route;
    j["requested_route"] = route.requested;
    j["warnings"] = route.warnings;
    j["bound"] = bound_to_json(route.bound);
    return j;
}

Json verify_report(const JobSpec& job, const DominationReport& report) {
    Json j;
    j["schema"] = "bettibounds.report.v1";
    j["job"] = job_echo(job);
    j["route"] = report.route.route;
    j["requested_route"] = report.route.requested;
    j["warnings"] = report.route.warnings;
    j["bound"] = bound_to_json(report.route.bound);
    j["oracle"] = Json{{"betti", betti_to_json(report.oracle)},
                       {"sum", report.oracle_sum.str()},
                       {"resolution", report.resolution},
                       {"box", numerator(report.box_radius).str() + "/" +
                                   denominator(report.box_radius).str()}};
    j["dominates"] = report.dominates;
    j["stability_warning"] = report.stability_warning;
    return j;
}

Json construct_report(const JobSpec& job, const std::vector<ConstructRow>& rows) {
    Json j;
    j["schema"] = "bettibounds.report.v1";
    j["job"] = job_echo(job);
    Json table = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["construction"] = row.label;
        r["formula"] = row.formula_text;
        r["original_betti"] = betti_to_json(row.original);
        r["constructed_betti"] = betti_to_json(row.constructed);
        r["equal"] = row.equal;
        if (!row.raster_path.empty()) r["raster"] = row.raster_path;
        table.push_back(r);
    }
    j["comparison"] = table;
    j["caveats"] = Json::array({"sign conditions are witnessed on a finite grid; "
                                "measure-zero sign sets may be missed"});
    return j;
}

void validate_report(const Json& report) {
    auto need = [&](const char* key) {
        if (!report.contains(key))
            throw std::invalid_argument(std::string("report missing required field '") + key + "'");
    };
    need("schema");
    need("job");
    if (report["schema"] != "bettibounds.report.v1")
        throw std::invalid_argument("unknown report schema");
    if (!report["job"].contains("mode")) throw std::invalid_argument("report job echo missing mode");
    const std::string mode = report["job"]["mode"];
    if (mode == "bound" || mode == "verify") {
        need("bound");
        for (const char* key : {"theorem", "inputs", "o_constants", "value", "trace"})
            if (!report["bound"].contains(key))
                throw std::invalid_argument(std::string("bound block missing '") + key + "'");
    }
    if (mode == "verify") {
        need("oracle");
        need("dominates");
    }
    if (mode == "construct") need("comparison");
}

std::string render_report(Json report) {
    validate_report(report);
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    report["timestamp"] = buf;
    return report.dump(2) + "\n";
}

void write_report_atomic(const std::string& path, Json report) {
    const std::string rendered = render_report(std::move(report));
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << rendered;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move report into place: " + path);
}

}  // namespace bettibounds
