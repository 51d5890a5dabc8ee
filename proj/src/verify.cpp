#include "bettibounds/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace bettibounds {

namespace {

bool is_conjunction_of_atoms(const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) return true;
    if (f.kind() != Formula::Kind::And) return false;
    return std::all_of(f.children().begin(), f.children().end(),
                       [](const Formula& g) { return g.kind() == Formula::Kind::Atom; });
}

void collect_conjunction(const Formula& f, std::vector<const Atom*>& atoms) {
    if (f.kind() == Formula::Kind::Atom) {
        atoms.push_back(&f.as_atom());
        return;
    }
    for (const Formula& g : f.children()) collect_conjunction(g, atoms);
}

std::vector<ComplexityVector> distinct_complexities(const ComplexityMeasure& measure,
                                                    const std::vector<const Atom*>& atoms,
                                                    const std::vector<Rel>& rels) {
    std::vector<FnPtr> fns;
    for (const Atom* a : atoms) {
        if (std::find(rels.begin(), rels.end(), a->rel) == rels.end()) continue;
        bool seen = false;
        for (const FnPtr& g : fns) seen = seen || *g == *a->fn;
        if (!seen) fns.push_back(a->fn);
    }
    std::vector<ComplexityVector> out;
    out.reserve(fns.size());
    for (const FnPtr& g : fns) out.push_back(descriptor_complexity(measure, *g));
    return out;
}

enum class RouteKind { Equalities, Nonstrict, MixedConj, Closed, OpenDual, Boolean };

std::string route_name(RouteKind k) {
    switch (k) {
        case RouteKind::Equalities: return "equalities";
        case RouteKind::Nonstrict: return "nonstrict";
        case RouteKind::MixedConj: return "mixed";
        case RouteKind::Closed: return "closed_set";
        case RouteKind::OpenDual: return "open_dual";
        case RouteKind::Boolean: return "boolean_combination";
    }
    return "?";
}

std::optional<RouteKind> parse_route(const std::string& name) {
    if (name == "auto") return std::nullopt;
    if (name == "equalities") return RouteKind::Equalities;
    if (name == "nonstrict") return RouteKind::Nonstrict;
    if (name == "mixed") return RouteKind::MixedConj;
    if (name == "closed_set" || name == "closed") return RouteKind::Closed;
    if (name == "open_dual" || name == "open") return RouteKind::OpenDual;
    if (name == "boolean_combination" || name == "boolean") return RouteKind::Boolean;
    throw std::invalid_argument("unknown theorem route: " + name);
}

bool route_applies(RouteKind kind, const Formula& norm, SetClass cls) {
    std::vector<const Atom*> atoms;
    const bool conj = is_conjunction_of_atoms(norm);
    if (conj) collect_conjunction(norm, atoms);
    auto all_rel_in = [&](std::initializer_list<Rel> rels) {
        return std::all_of(atoms.begin(), atoms.end(), [&](const Atom* a) {
            return std::find(rels.begin(), rels.end(), a->rel) != rels.end();
        });
    };
    switch (kind) {
        case RouteKind::Equalities: return conj && !atoms.empty() && all_rel_in({Rel::EQ});
        case RouteKind::Nonstrict: return conj && !atoms.empty() && all_rel_in({Rel::GE, Rel::LE});
        case RouteKind::MixedConj:
            return conj && !atoms.empty() && all_rel_in({Rel::EQ, Rel::GE, Rel::LE});
        case RouteKind::Closed: return cls == SetClass::Closed;
        case RouteKind::OpenDual: return cls == SetClass::Open;
        case RouteKind::Boolean: return true;
    }
    return false;
}

RouteKind auto_route(const Formula& norm, SetClass cls) {
    if (route_applies(RouteKind::Equalities, norm, cls)) return RouteKind::Equalities;
    if (route_applies(RouteKind::Nonstrict, norm, cls)) return RouteKind::Nonstrict;
    if (route_applies(RouteKind::MixedConj, norm, cls)) return RouteKind::MixedConj;
    if (cls == SetClass::Closed) return RouteKind::Closed;
    if (cls == SetClass::Open) return RouteKind::OpenDual;
    return RouteKind::Boolean;
}

Bound apply_route(RouteKind kind, const ComplexityMeasure& measure, const Formula& norm,
                  std::size_t n, const OConstants& /*consts*/) {
    std::vector<const Atom*> atoms;
    if (is_conjunction_of_atoms(norm)) collect_conjunction(norm, atoms);
    const std::vector<FnPtr> fns = atoms_of(norm);
    std::vector<ComplexityVector> cvecs;
    cvecs.reserve(fns.size());
    for (const FnPtr& g : fns) cvecs.push_back(descriptor_complexity(measure, *g));
    const std::size_t s = fns.size();

    switch (kind) {
        case RouteKind::Equalities:
            return equalities_bound(measure, n, distinct_complexities(measure, atoms, {Rel::EQ}));
        case RouteKind::Nonstrict:
            return nonstrict_bound(measure, n,
                                   distinct_complexities(measure, atoms, {Rel::GE, Rel::LE}));
        case RouteKind::MixedConj: {
            auto eqs = distinct_complexities(measure, atoms, {Rel::EQ});
            auto ineqs = distinct_complexities(measure, atoms, {Rel::GE, Rel::LE});
            return mixed_bound(measure, n, eqs, ineqs);
        }
        case RouteKind::Closed: {
            const Bound om = omega(measure, n, cvecs, {});
            return closed_set_bound(s, n, om);
        }
        case RouteKind::OpenDual: {
            // The complement swaps every strict atom for its non-strict
            // converse; s and the complexities are unchanged, and by
            // Alexander duality the closed bound applies verbatim.
            const Bound om = omega(measure, n, cvecs, {});
            Bound closed = closed_set_bound(s, n, om);
            closed.provenance.theorem = "open_dual";
            closed.provenance.trace.push_back(
                "open set bounded via the closed complement and Alexander duality");
            return closed;
        }
        case RouteKind::Boolean: {
            if (s == 0) {
                // No atoms at all: the set is the whole space or empty.
                return make_bound(1, Provenance{"boolean_combination",
                                                {{"n", std::to_string(n)}, {"s", "0"}},
                                                {},
                                                {"degenerate atomless formula"}});
            }
            std::vector<ComplexityVector> f_prime = cvecs;
            f_prime.push_back(measure.norm_squared());
            const Bound om = omega(measure, n, f_prime, {});
            return boolean_combination_bound(n, s, om);
        }
    }
    throw std::logic_error("unreachable route");
}

}  // namespace

RouteResult route_formula_bound(const ComplexityMeasure& measure, const Formula& formula,
                                std::size_t n, const OConstants& consts,
                                const std::string& route_override, bool strict) {
    if (n == 0) throw std::invalid_argument("route_formula_bound: ambient dimension must be >= 1");
    const Formula norm = normalize(formula);
    const SetClass cls = classify(norm);

    RouteResult result{make_bound(0, Provenance{"unrouted", {}, {}, {}}), "", route_override, cls, {}};
    RouteKind kind = auto_route(norm, cls);
    const auto requested = parse_route(route_override);
    if (requested) {
        if (route_applies(*requested, norm, cls)) {
            kind = *requested;
        } else {
            const std::string msg = "route override '" + route_override +
                                    "' does not apply to this " + set_class_name(cls) +
                                    " formula; using '" + route_name(kind) + "'";
            if (strict) throw std::invalid_argument(msg);
            result.warnings.push_back(msg);
        }
    }
    result.bound = apply_route(kind, measure, norm, n, consts);
    result.route = route_name(kind);
    return result;
}

Formula relax_at_grid_scale(const Formula& f, const Rat& delta, const Rat& eps) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Atom& a = f.as_atom();
            switch (a.rel) {
                case Rel::EQ:
                    return Formula::and_of({Formula::atom(a.fn->poly() - eps, Rel::LE),
                                            Formula::atom(a.fn->poly() + eps, Rel::GE)});
                case Rel::GT: return Formula::atom(a.fn->poly() - delta, Rel::GE);
                case Rel::LT: return Formula::atom(a.fn->poly() + delta, Rel::LE);
                case Rel::GE:
                case Rel::LE: return f;
            }
            return f;
        }
        case Formula::Kind::Not:
            throw std::invalid_argument("relax_at_grid_scale expects a normalized formula");
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<Formula> kids;
            kids.reserve(f.children().size());
            for (const Formula& g : f.children()) kids.push_back(relax_at_grid_scale(g, delta, eps));
            return f.kind() == Formula::Kind::And ? Formula::and_of(std::move(kids))
                                                  : Formula::or_of(std::move(kids));
        }
    }
    return f;
}

BettiVector oracle_betti(const Formula& f, const Rat& radius, std::size_t resolution,
                         const CoefficientField& field) {
    const Rat cell_width = 2 * radius / Rat(static_cast<long long>(resolution));
    const Formula relaxed = relax_at_grid_scale(normalize(f), 2 * cell_width, 2 * cell_width);
    return betti(rasterize(relaxed, radius, resolution), field);
}

DominationReport verify_domination(const ComplexityMeasure& measure, const Formula& formula,
                                   const std::string& route_override, const Rat& box_radius,
                                   std::size_t resolution, const OConstants& consts,
                                   const CoefficientField& field,
                                   const std::optional<Nat>& corrupt_bound_hook) {
    const std::size_t n = formula_n_vars(formula);
    if (n == 0 || n > 3)
        throw CapabilityError("verify_domination: oracle supports dimensions 1..3, got " +
                              std::to_string(n));
    for (const FnPtr& fn : atoms_of(formula))
        if (!fn->is_concrete())
            throw CapabilityError("verify_domination: abstract descriptors are not evaluable");

    DominationReport report{route_formula_bound(measure, formula, n, consts, route_override),
                            {},
                            0,
                            false,
                            false,
                            resolution,
                            box_radius};
    report.oracle = oracle_betti(formula, box_radius, resolution, field);
    report.oracle_sum = report.oracle.sum();

    const BettiVector doubled = oracle_betti(formula, box_radius, 2 * resolution, field);
    report.stability_warning = !(doubled == report.oracle);

    const Nat& effective =
        corrupt_bound_hook ? *corrupt_bound_hook : report.route.bound.value;
    report.dominates = effective >= report.oracle_sum;
    return report;
}

}  // namespace bettibounds
