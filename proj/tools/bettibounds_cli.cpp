#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "bettibounds/construct.hpp"
#include "bettibounds/parser.hpp"
#include "bettibounds/report.hpp"
#include "bettibounds/rules.hpp"
#include "bettibounds/verify.hpp"

namespace bb = bettibounds;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDominationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapabilityError = 3;

struct Overrides {
    std::optional<std::string> measure;
    std::vector<std::string> o_consts;
    std::optional<std::string> box;
    std::optional<std::size_t> res;
    std::optional<std::string> lambda;
    std::optional<std::size_t> m;
    std::optional<std::string> out;
    bool strict = false;
};

void apply_overrides(bb::JobSpec& job, const Overrides& ov) {
    if (ov.measure) job.measure = *ov.measure;
    if (ov.box) job.box = bb::parse_rational(*ov.box);
    if (ov.res) job.res = *ov.res;
    if (ov.lambda) job.lambda = bb::parse_rational(*ov.lambda);
    if (ov.m) job.m = *ov.m;
    if (ov.out) job.out = *ov.out;
    for (const std::string& kv : ov.o_consts) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("--o-const expects NAME=K, got '" + kv + "'");
        const long v = std::stol(kv.substr(eq + 1));
        if (v < 1) throw std::invalid_argument("O-constants must be >= 1");
        job.o_constants[kv.substr(0, eq)] = static_cast<std::uint64_t>(v);
    }
}

bb::OConstants consts_of(const bb::JobSpec& job) {
    bb::OConstants consts;
    for (const auto& [name, value] : job.o_constants) consts.set(name, value);
    return consts;
}

bb::CoefficientField field_of(const bb::JobSpec& job) {
    if (job.field == "gf2") return bb::CoefficientField::gf2();
    return bb::CoefficientField::gfp(
        static_cast<std::uint32_t>(std::stoul(job.field.substr(4))));
}

bb::MeasurePtr measure_of(const bb::JobSpec& job, bb::MeasureRegistry& registry) {
    if (job.measure_file) registry.add(bb::load_measure_path(*job.measure_file));
    return registry.find(job.measure);
}

void emit(const bb::JobSpec& job, bb::Json report) {
    if (job.out) {
        bb::write_report_atomic(*job.out, std::move(report));
        std::cerr << job.name << ": report written to " << *job.out << "\n";
    } else {
        std::cout << bb::render_report(std::move(report));
    }
}

bb::QuantifiedFormula dualize(const bb::QuantifiedFormula& qf) {
    std::vector<bb::QuantifierBlock> blocks;
    for (const auto& b : qf.blocks())
        blocks.push_back({b.q == bb::Quantifier::Exists ? bb::Quantifier::ForAll
                                                        : bb::Quantifier::Exists,
                          b.width});
    return bb::QuantifiedFormula(std::move(blocks), qf.free_dim(),
                                 bb::normalize(bb::Formula::not_of(qf.matrix())));
}

int run_bound(const bb::JobSpec& job, bb::MeasureRegistry& registry, bool strict) {
    const bb::MeasurePtr measure = measure_of(job, registry);
    const bb::OConstants consts = consts_of(job);

    if (job.quantified) {
        bb::QuantifiedFormula qf = bb::parse_quantified(*job.quantified, job.free_dim);
        const bool dualized = qf.blocks().front().q == bb::Quantifier::ForAll;
        // A leading universal block is handled through the complement:
        // bound the dual prefix on the negated matrix, then transfer with
        // Alexander duality (the value is degree-uniform, so it carries over).
        const bb::QuantifiedFormula working = dualized ? dualize(qf) : qf;

        const auto fns = bb::atoms_of(working.matrix());
        if (fns.empty()) throw std::invalid_argument(job.name + ": quantified matrix has no atoms");
        std::vector<bb::Nat> maxed;
        for (const auto& fn : fns) {
            const bb::ComplexityVector c = bb::descriptor_complexity(*measure, *fn);
            if (maxed.empty()) maxed.assign(c.arity(), 0);
            for (std::size_t i = 0; i < c.arity(); ++i) maxed[i] = bb::nat_max(maxed[i], c[i]);
        }
        const bb::ComplexityVector c_atoms{std::vector<bb::Nat>(maxed)};
        const bb::QuantifierProfile profile = bb::QuantifierProfile::of(working);
        bb::Bound bound =
            bb::quantified_bound(*measure, profile, fns.size(), c_atoms, consts);
        if (dualized) {
            // Transfer from the complement: the quantified value is uniform
            // over homology degrees, so the duality map carries it verbatim.
            bb::Bound transferred = bb::alexander_dual(0, std::max<std::size_t>(qf.free_dim(), 1),
                                                       bound);
            transferred.provenance.theorem = "quantified_dual";
            transferred.provenance.inputs.insert(transferred.provenance.inputs.end(),
                                                 bound.provenance.inputs.begin(),
                                                 bound.provenance.inputs.end());
            transferred.provenance.o_constants = bound.provenance.o_constants;
            transferred.provenance.trace = bound.provenance.trace;
            transferred.provenance.trace.push_back(
                "leading universal block: bound computed on the dual prefix and transferred by "
                "Alexander duality");
            bound = std::move(transferred);
        }
        bound.provenance.trace.push_back("per-degree bound; Betti sum <= (n_0+1) * value");

        bb::RouteResult route{std::move(bound), dualized ? "quantified_dual" : "quantified",
                              job.theorem.value_or("auto"), bb::SetClass::Mixed, {}};
        emit(job, bb::bound_report(job, route, job.free_dim));
        return kExitOk;
    }

    bb::Formula f = bb::parse_formula(*job.formula, job.n);
    std::size_t n = job.n.value_or(bb::formula_n_vars(f));
    if (n == 0) throw std::invalid_argument(job.name + ": ambient dimension is 0; set n");
    const bb::RouteResult route = bb::route_formula_bound(
        *measure, f, n, consts, job.theorem.value_or("auto"), strict);
    emit(job, bb::bound_report(job, route, n));
    return kExitOk;
}

int run_verify(const bb::JobSpec& job, bb::MeasureRegistry& registry, bool strict) {
    const bb::MeasurePtr measure = measure_of(job, registry);
    const bb::Formula f = bb::parse_formula(*job.formula, job.n);
    const bb::DominationReport report =
        bb::verify_domination(*measure, f, job.theorem.value_or("auto"), job.box, job.res,
                              consts_of(job), field_of(job));
    if (strict && !report.route.warnings.empty())
        throw std::invalid_argument(report.route.warnings.front());
    emit(job, bb::verify_report(job, report));
    return report.dominates ? kExitOk : kExitDominationFailure;
}

int run_construct(const bb::JobSpec& job, bb::MeasureRegistry& registry) {
    measure_of(job, registry);  // surfaces unknown-measure errors early
    const bb::Formula f = bb::parse_formula(*job.formula, job.n);
    const bb::GridSpec grid{job.box, job.grid_points};
    const bb::CoefficientField field = field_of(job);

    const bb::BettiVector original = bb::oracle_betti(f, job.box, job.res, field);

    auto raster_path = [&](const std::string& suffix) {
        return job.out ? *job.out + "." + suffix + ".cbs" : std::string{};
    };
    auto write_raster = [&](const bb::CubicalSet& cs, const std::string& path) {
        if (path.empty()) return;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path);
        cs.serialize(out);
    };

    std::vector<bb::ConstructRow> rows;
    if (job.construct_what == "t" || job.construct_what == "both") {
        const bb::Formula t_formula = bb::build_T(f, job.lambda, job.m, grid);
        const bb::CubicalSet ras = bb::rasterize(t_formula, job.box, job.res);
        const bb::BettiVector bv = bb::betti(ras, field);
        const std::string path = raster_path("T");
        write_raster(ras, path);
        rows.push_back({"T", bb::print_formula(t_formula), original, bv, bv == original, path});
    }
    if (job.construct_what == "xprime" || job.construct_what == "both") {
        const bb::Formula x_formula = bb::closed_approximation(f, job.lambda, grid);
        const bb::CubicalSet ras = bb::rasterize(x_formula, job.box, job.res);
        const bb::BettiVector bv = bb::betti(ras, field);
        const std::string path = raster_path("Xprime");
        write_raster(ras, path);
        rows.push_back(
            {"Xprime", bb::print_formula(x_formula), original, bv, bv == original, path});
    }
    emit(job, bb::construct_report(job, rows));
    for (const auto& row : rows)
        if (!row.equal) return kExitDominationFailure;
    return kExitOk;
}

int run_jobs(const std::string& jobfile, bb::JobSpec::Mode mode, const Overrides& ov) {
    std::vector<bb::JobSpec> jobs;
    try {
        jobs = bb::parse_jobspec_path(jobfile);
        for (const auto& job : jobs)
            if (job.mode != mode)
                throw std::invalid_argument(jobfile + ": job '" + job.name + "' has mode " +
                                            bb::mode_name(job.mode) + ", expected " +
                                            bb::mode_name(mode));
        if (ov.out && jobs.size() > 1)
            throw std::invalid_argument("--out works with a single job; use per-job 'out' keys");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    bb::MeasureRegistry registry;
    int exit_code = kExitOk;
    for (bb::JobSpec job : jobs) {
        try {
            apply_overrides(job, ov);
            int code = kExitOk;
            switch (mode) {
                case bb::JobSpec::Mode::Bound: code = run_bound(job, registry, ov.strict); break;
                case bb::JobSpec::Mode::Verify: code = run_verify(job, registry, ov.strict); break;
                case bb::JobSpec::Mode::Construct: code = run_construct(job, registry); break;
            }
            exit_code = std::max(exit_code, code);
        } catch (const bb::CapabilityError& e) {
            std::cerr << job.name << ": " << e.what() << "\n";
            exit_code = std::max(exit_code, kExitCapabilityError);
        } catch (const std::exception& e) {
            std::cerr << job.name << ": " << e.what() << "\n";
            exit_code = std::max(exit_code, kExitInputError);
        }
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Betti-number upper bounds over axiomatic complexity measures, with a desk-scale "
                 "geometric oracle"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string jobfile;
        Overrides ov;
    };
    auto add_common = [](CLI::App* sub, SubArgs& args) {
        sub->add_option("jobfile", args.jobfile, "line-oriented [job] spec file")->required();
        sub->add_option("--measure", args.ov.measure, "complexity measure name");
        sub->add_option("--o-const", args.ov.o_consts, "NAME=K, repeatable")->take_all();
        sub->add_option("--box", args.ov.box, "box radius R (rational p/q)");
        sub->add_option("--res", args.ov.res, "cells per axis");
        sub->add_option("--lambda", args.ov.lambda, "schedule ratio (rational p/q)");
        sub->add_option("--m", args.ov.m, "schedule chain length");
        sub->add_option("--out", args.ov.out, "report output path");
        sub->add_flag("--strict", args.ov.strict, "escalate route-override conflicts to errors");
    };

    SubArgs bound_args, verify_args, construct_args;
    add_common(app.add_subcommand("bound", "compute a Betti-sum upper bound"), bound_args);
    add_common(app.add_subcommand("verify", "check bound >= oracle Betti sum"), verify_args);
    add_common(app.add_subcommand("construct", "emit T and X' approximations"), construct_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    if (app.got_subcommand("bound"))
        return run_jobs(bound_args.jobfile, bb::JobSpec::Mode::Bound, bound_args.ov);
    if (app.got_subcommand("verify"))
        return run_jobs(verify_args.jobfile, bb::JobSpec::Mode::Verify, verify_args.ov);
    return run_jobs(construct_args.jobfile, bb::JobSpec::Mode::Construct, construct_args.ov);
}
