#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bettibounds/bounds.hpp"
#include "bettibounds/construct.hpp"
#include "bettibounds/parser.hpp"
#include "bettibounds/report.hpp"
#include "bettibounds/verify.hpp"

namespace py = pybind11;
namespace bb = bettibounds;

namespace {

py::int_ to_pyint(const bb::Nat& v) {
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(py::str(v.str())));
}

bb::ComplexityVector to_cvec_ints(const std::vector<long long>& entries) {
    std::vector<bb::Nat> out(entries.begin(), entries.end());
    return bb::ComplexityVector(std::move(out));
}

std::vector<bb::ComplexityVector> to_cvecs(const std::vector<std::vector<long long>>& vs) {
    std::vector<bb::ComplexityVector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(to_cvec_ints(v));
    return out;
}

std::vector<long long> from_cvec(const bb::ComplexityVector& c) {
    std::vector<long long> out;
    out.reserve(c.arity());
    for (const auto& e : c.entries()) out.push_back(e.convert_to<long long>());
    return out;
}

bb::MeasurePtr measure_by_name(const std::string& name) {
    static bb::MeasureRegistry registry;
    return registry.find(name);
}

bb::OConstants consts_from(const std::map<std::string, std::uint64_t>& values) {
    bb::OConstants consts;
    for (const auto& [k, v] : values) consts.set(k, v);
    return consts;
}

py::list betti_list(const bb::BettiVector& bv) {
    py::list out;
    for (const auto& r : bv.ranks) out.append(to_pyint(r));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Betti-number upper bounds over axiomatic complexity measures";

    py::class_<bb::Bound>(m, "Bound")
        .def_property_readonly("value", [](const bb::Bound& b) { return to_pyint(b.value); })
        .def_property_readonly("theorem",
                               [](const bb::Bound& b) { return b.provenance.theorem; })
        .def("json", [](const bb::Bound& b) { return bb::bound_to_json(b).dump(2); })
        .def("__repr__", [](const bb::Bound& b) {
            return "<Bound " + b.provenance.theorem + " = " + b.value.str() + ">";
        });

    py::class_<bb::Formula>(m, "Formula")
        .def_static("parse",
                    [](const std::string& text, std::optional<std::size_t> n) {
                        return bb::parse_formula(text, n);
                    },
                    py::arg("text"), py::arg("n") = std::nullopt)
        .def("normalized", [](const bb::Formula& f) { return bb::normalize(f); })
        .def("classify",
             [](const bb::Formula& f) { return std::string(bb::set_class_name(bb::classify(bb::normalize(f)))); })
        .def("atom_count", [](const bb::Formula& f) { return bb::atoms_of(f).size(); })
        .def("n_vars", &bb::formula_n_vars)
        .def("__str__", [](const bb::Formula& f) { return bb::print_formula(f); });

    m.def("measures", [] {
        bb::MeasureRegistry registry;
        return registry.names();
    });

    m.def(
        "fold",
        [](const std::string& measure, const std::string& op,
           const std::vector<std::vector<long long>>& vectors) {
            const auto m_ = measure_by_name(measure);
            const auto folded = bb::fold_complexity(
                *m_, op == "times" ? bb::FoldOp::Times : bb::FoldOp::Plus, to_cvecs(vectors));
            return from_cvec(folded);
        },
        py::arg("measure"), py::arg("op"), py::arg("vectors"));

    m.def(
        "kappa",
        [](const std::string& measure, const std::vector<long long>& c) {
            return from_cvec(bb::kappa(*measure_by_name(measure), to_cvec_ints(c)));
        },
        py::arg("measure"), py::arg("c"));

    m.def(
        "gamma",
        [](const std::string& measure, std::size_t n, const std::vector<long long>& c) {
            return to_pyint(bb::gamma_value(*measure_by_name(measure), n, to_cvec_ints(c)));
        },
        py::arg("measure"), py::arg("n"), py::arg("c"));

    m.def(
        "khovanskii",
        [](std::size_t n, const std::vector<std::tuple<long long, long long, long long>>& cs) {
            std::vector<bb::PfaffianComplexity> pcs;
            for (const auto& [a, b, r] : cs) pcs.emplace_back(a, b, r);
            return to_pyint(bb::khovanskii_tn_value(n, pcs));
        },
        py::arg("n"), py::arg("complexities"));

    m.def(
        "omega",
        [](const std::string& measure, std::size_t n, const std::vector<std::vector<long long>>& F,
           const std::vector<std::vector<long long>>& G) {
            return to_pyint(bb::omega_value(*measure_by_name(measure), n, to_cvecs(F), to_cvecs(G)));
        },
        py::arg("measure"), py::arg("n"), py::arg("F"), py::arg("G") = std::vector<std::vector<long long>>{});

    m.def(
        "equalities_bound",
        [](const std::string& measure, std::size_t n, const std::vector<std::vector<long long>>& fs) {
            return bb::equalities_bound(*measure_by_name(measure), n, to_cvecs(fs));
        },
        py::arg("measure"), py::arg("n"), py::arg("fs"));

    m.def(
        "nonstrict_bound",
        [](const std::string& measure, std::size_t n, const std::vector<std::vector<long long>>& fs) {
            return bb::nonstrict_bound(*measure_by_name(measure), n, to_cvecs(fs));
        },
        py::arg("measure"), py::arg("n"), py::arg("fs"));

    m.def(
        "mixed_bound",
        [](const std::string& measure, std::size_t n, const std::vector<std::vector<long long>>& eqs,
           const std::vector<std::vector<long long>>& ineqs) {
            return bb::mixed_bound(*measure_by_name(measure), n, to_cvecs(eqs), to_cvecs(ineqs));
        },
        py::arg("measure"), py::arg("n"), py::arg("eqs"), py::arg("ineqs"));

    m.def(
        "bound_for",
        [](const std::string& measure, const std::string& formula, std::optional<std::size_t> n,
           const std::string& route, const std::map<std::string, std::uint64_t>& o_consts) {
            const bb::Formula f = bb::parse_formula(formula, n);
            const std::size_t dim = n.value_or(bb::formula_n_vars(f));
            const auto result = bb::route_formula_bound(*measure_by_name(measure), f, dim,
                                                        consts_from(o_consts), route);
            return py::make_tuple(result.bound, result.route);
        },
        py::arg("measure"), py::arg("formula"), py::arg("n") = std::nullopt,
        py::arg("route") = "auto", py::arg("o_consts") = std::map<std::string, std::uint64_t>{});

    m.def(
        "sign_conditions_bound",
        [](std::size_t i, std::size_t s, std::size_t n_prime, const std::string& omega_value_) {
            return bb::sign_conditions_bound(
                i, s, n_prime, bb::make_bound(bb::Nat(omega_value_), {"omega", {}, {}, {}}));
        },
        py::arg("i"), py::arg("s"), py::arg("n_prime"), py::arg("omega"));

    m.def(
        "closed_set_bound",
        [](std::size_t s, std::size_t n_prime, const std::string& omega_value_) {
            return bb::closed_set_bound(
                s, n_prime, bb::make_bound(bb::Nat(omega_value_), {"omega", {}, {}, {}}));
        },
        py::arg("s"), py::arg("n_prime"), py::arg("omega"));

    m.def(
        "boolean_combination_bound",
        [](std::size_t n, std::size_t s, const std::string& omega_value_) {
            return bb::boolean_combination_bound(
                n, s, bb::make_bound(bb::Nat(omega_value_), {"omega", {}, {}, {}}));
        },
        py::arg("n"), py::arg("s"), py::arg("omega"));

    m.def(
        "projection_bound",
        [](const std::string& measure, std::size_t k, std::size_t n, std::size_t fiber_dim,
           std::size_t s, const std::vector<std::vector<long long>>& fs,
           const std::map<std::string, std::uint64_t>& o_consts) {
            return bb::projection_bound(*measure_by_name(measure), k, n, fiber_dim, s,
                                        to_cvecs(fs), consts_from(o_consts));
        },
        py::arg("measure"), py::arg("k"), py::arg("n"), py::arg("fiber_dim"), py::arg("s"),
        py::arg("fs"), py::arg("o_consts") = std::map<std::string, std::uint64_t>{});

    m.def(
        "atom_count",
        [](const std::vector<std::size_t>& widths, std::size_t s) {
            return bb::atom_count(bb::QuantifierProfile(widths), s, bb::OConstants{});
        },
        py::arg("widths"), py::arg("s"));

    m.def(
        "term_count",
        [](const std::vector<std::size_t>& widths, std::size_t i,
           const std::map<std::string, std::uint64_t>& o_consts) {
            return bb::term_count(bb::QuantifierProfile(widths), i, consts_from(o_consts));
        },
        py::arg("widths"), py::arg("i"),
        py::arg("o_consts") = std::map<std::string, std::uint64_t>{});

    m.def(
        "mv_union_bound",
        [](std::size_t i, std::size_t piece_count,
           const std::map<std::uint64_t, std::string>& piece_bounds,
           const std::vector<std::uint64_t>& empty_intersections) {
            std::map<std::uint64_t, bb::Bound> pieces;
            for (const auto& [mask, v] : piece_bounds)
                pieces.emplace(mask, bb::make_bound(bb::Nat(v), {"piece", {}, {}, {}}));
            return bb::mv_union_bound(i, piece_count, pieces,
                                      {empty_intersections.begin(), empty_intersections.end()});
        },
        py::arg("i"), py::arg("piece_count"), py::arg("piece_bounds"),
        py::arg("empty_intersections") = std::vector<std::uint64_t>{});

    m.def(
        "alexander_dual",
        [](std::size_t q, std::size_t n, const std::string& reduced_augmented) {
            return bb::alexander_dual(
                q, n, bb::make_bound(bb::Nat(reduced_augmented), {"augmented", {}, {}, {}}));
        },
        py::arg("q"), py::arg("n"), py::arg("reduced_augmented"));

    m.def(
        "fiber_product_bound",
        [](std::size_t k, const std::vector<std::string>& w_bounds) {
            std::vector<bb::Bound> bounds;
            for (const auto& v : w_bounds)
                bounds.push_back(bb::make_bound(bb::Nat(v), {"w_p", {}, {}, {}}));
            return bb::fiber_product_bound(k, bounds);
        },
        py::arg("k"), py::arg("w_bounds"));

    m.def(
        "quantified_bound",
        [](const std::string& measure, const std::vector<std::size_t>& widths, std::size_t s,
           const std::vector<long long>& atom_complexity,
           const std::map<std::string, std::uint64_t>& o_consts) {
            return bb::quantified_bound(*measure_by_name(measure), bb::QuantifierProfile(widths), s,
                                        to_cvec_ints(atom_complexity), consts_from(o_consts));
        },
        py::arg("measure"), py::arg("widths"), py::arg("s"), py::arg("atom_complexity"),
        py::arg("o_consts") = std::map<std::string, std::uint64_t>{});

    m.def(
        "t_sequence",
        [](const std::vector<std::size_t>& widths) {
            py::list out;
            for (const auto& b : bb::t_sequence(bb::QuantifierProfile(widths)))
                out.append(to_pyint(b.value));
            return out;
        },
        py::arg("widths"));

    m.def(
        "oracle_betti",
        [](const std::string& formula, const std::string& box, std::size_t res,
           const std::string& field) {
            const bb::Formula f = bb::parse_formula(formula);
            const auto fld = field == "gf2"
                                 ? bb::CoefficientField::gf2()
                                 : bb::CoefficientField::gfp(static_cast<std::uint32_t>(
                                       std::stoul(field.substr(4))));
            return betti_list(bb::oracle_betti(f, bb::parse_rational(box), res, fld));
        },
        py::arg("formula"), py::arg("box") = "2", py::arg("res") = 64, py::arg("field") = "gf2");

    m.def(
        "verify",
        [](const std::string& measure, const std::string& formula, const std::string& route,
           const std::string& box, std::size_t res) {
            const bb::Formula f = bb::parse_formula(formula);
            const auto report =
                bb::verify_domination(*measure_by_name(measure), f, route, bb::parse_rational(box),
                                      res, bb::OConstants{}, bb::CoefficientField::gf2());
            py::dict out;
            out["betti"] = betti_list(report.oracle);
            out["oracle_sum"] = to_pyint(report.oracle_sum);
            out["bound"] = report.route.bound;
            out["route"] = report.route.route;
            out["dominates"] = report.dominates;
            out["stability_warning"] = report.stability_warning;
            return out;
        },
        py::arg("measure"), py::arg("formula"), py::arg("route") = "auto", py::arg("box") = "2",
        py::arg("res") = 64);

    m.def(
        "build_t",
        [](const std::string& formula, const std::string& lambda, std::size_t m_,
           const std::string& box, std::size_t grid) {
            const bb::Formula f = bb::parse_formula(formula);
            return bb::print_formula(
                bb::build_T(f, bb::parse_rational(lambda), m_, {bb::parse_rational(box), grid}));
        },
        py::arg("formula"), py::arg("lambda"), py::arg("m"), py::arg("box") = "2",
        py::arg("grid") = 17);

    m.def(
        "closed_approximation",
        [](const std::string& formula, const std::string& lambda, const std::string& box,
           std::size_t grid) {
            const bb::Formula f = bb::parse_formula(formula);
            return bb::print_formula(bb::closed_approximation(f, bb::parse_rational(lambda),
                                                              {bb::parse_rational(box), grid}));
        },
        py::arg("formula"), py::arg("lambda"), py::arg("box") = "2", py::arg("grid") = 17);
}
