#include "bettibounds/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace bettibounds {

Bound make_bound(Nat value, Provenance provenance) {
    if (value < 0) throw std::logic_error("bound values are natural numbers");
    if (provenance.theorem.empty()) throw std::logic_error("bound provenance must name its theorem");
    return Bound{std::move(value), std::move(provenance)};
}

void OConstants::set(const std::string& name, std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("O-constant '" + name + "' must be >= 1");
    values_[name] = k;
}

std::uint64_t OConstants::get(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? 1u : it->second;
}

QuantifierProfile::QuantifierProfile(std::vector<std::size_t> widths) : widths_(std::move(widths)) {
    if (widths_.size() < 2)
        throw std::invalid_argument("profile needs n_0 and at least one quantified block");
    Nat u = 0, w = 1;
    for (std::size_t x : widths_) {
        if (x == 0) throw std::invalid_argument("profile widths must be >= 1");
        u += x;
        w *= x;
        u_.push_back(u);
        w_.push_back(w);
    }
    k_cap_ = u_.back();

    // Worst-case t_j recursion; Lemma-checked against (2|K|)^j w_j + 1.
    Nat t = widths_[0];
    t_.push_back(t);
    for (std::size_t j = 1; j < widths_.size(); ++j) {
        const Nat p_j = t + k_cap_;
        t = t + Nat(widths_[j]) * (p_j + 1);
        t_.push_back(t);
        const Nat cap = nat_pow(2 * k_cap_, j) * w_[j] + 1;
        if (t > cap)
            throw std::logic_error("t_sequence exceeds its inductive cap at j=" + std::to_string(j) +
                                   ": " + t.str() + " > " + cap.str());
    }
}

QuantifierProfile QuantifierProfile::of(const QuantifiedFormula& qf) {
    std::vector<std::size_t> widths{qf.free_dim()};
    for (const auto& b : qf.blocks()) widths.push_back(b.width);
    return QuantifierProfile(std::move(widths));
}

Nat QuantifierProfile::u(std::size_t j) const {
    if (j >= u_.size()) throw std::out_of_range("u index");
    return u_[j];
}
Nat QuantifierProfile::w(std::size_t j) const {
    if (j >= w_.size()) throw std::out_of_range("w index");
    return w_[j];
}
Nat QuantifierProfile::t(std::size_t j) const {
    if (j >= t_.size()) throw std::out_of_range("t index");
    return t_[j];
}

std::string QuantifierProfile::str() const {
    std::ostringstream os;
    os << "nu=" << nu() << " widths=[";
    for (std::size_t i = 0; i < widths_.size(); ++i) os << (i ? "," : "") << widths_[i];
    os << "]";
    return os.str();
}

namespace {

std::string vec_list(const std::vector<ComplexityVector>& cs) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i].str();
    os << "]";
    return os.str();
}

std::vector<FnPtr> as_descriptors(const std::vector<ComplexityVector>& cs) {
    std::vector<FnPtr> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(FunctionDescriptor::abstract(c));
    return out;
}

}  // namespace

Bound gamma(const ComplexityMeasure& measure, std::size_t n, const ComplexityVector& c) {
    Provenance prov{"gamma", {{"measure", measure.name()}, {"n", std::to_string(n)}, {"c", c.str()}}, {}, {}};
    return make_bound(gamma_value(measure, n, c), std::move(prov));
}

Bound khovanskii_tn(std::size_t n, const std::vector<PfaffianComplexity>& complexities) {
    Provenance prov{"khovanskii_tn", {{"n", std::to_string(n)}}, {}, {}};
    for (const auto& c : complexities)
        prov.trace.push_back("(alpha,beta,r) = (" + c.alpha.str() + "," + c.beta.str() + "," +
                             c.order.str() + ")");
    return make_bound(khovanskii_tn_value(n, complexities), std::move(prov));
}

Bound omega(const ComplexityMeasure& measure, std::size_t n, const std::vector<ComplexityVector>& F,
            const std::vector<ComplexityVector>& G) {
    Provenance prov{"omega",
                    {{"measure", measure.name()},
                     {"n", std::to_string(n)},
                     {"F", vec_list(F)},
                     {"G", vec_list(G)}},
                    {},
                    {}};
    return make_bound(omega_value(measure, n, F, G), std::move(prov));
}

namespace {

Bound half_gamma_bound(const char* theorem, const ComplexityMeasure& measure, std::size_t n,
                       const CompositeRecipe& recipe, Provenance prov) {
    const ComplexityVector composite = composite_complexity(measure, recipe, n);
    const Nat g = gamma_value(measure, n, composite);
    prov.trace.push_back("composite complexity = " + composite.str());
    prov.trace.push_back("gamma(" + std::to_string(n) + ", " + composite.str() + ") = " + g.str());
    prov.trace.push_back("bound = ceil(gamma/2) = " + ceil_half(g).str());
    prov.theorem = theorem;
    return make_bound(ceil_half(g), std::move(prov));
}

}  // namespace

Bound equalities_bound(const ComplexityMeasure& measure, std::size_t n,
                       const std::vector<ComplexityVector>& fs) {
    if (n == 0) throw std::domain_error("equalities_bound: n must be >= 1");
    if (fs.empty()) throw std::invalid_argument("equalities_bound: empty function list");
    Provenance prov{"", {{"measure", measure.name()}, {"n", std::to_string(n)}, {"fs", vec_list(fs)}}, {}, {}};
    return half_gamma_bound("equalities", measure, n, SumSquaresPlusNorm{as_descriptors(fs)},
                            std::move(prov));
}

Bound nonstrict_bound(const ComplexityMeasure& measure, std::size_t n,
                      const std::vector<ComplexityVector>& fs) {
    if (n == 0) throw std::domain_error("nonstrict_bound: n must be >= 1");
    if (fs.empty()) throw std::invalid_argument("nonstrict_bound: empty function list");
    Provenance prov{"", {{"measure", measure.name()}, {"n", std::to_string(n)}, {"fs", vec_list(fs)}}, {}, {}};
    return half_gamma_bound("nonstrict", measure, n, NormTimesProduct{as_descriptors(fs)},
                            std::move(prov));
}

Bound mixed_bound(const ComplexityMeasure& measure, std::size_t n,
                  const std::vector<ComplexityVector>& eqs,
                  const std::vector<ComplexityVector>& ineqs) {
    if (n == 0) throw std::domain_error("mixed_bound: n must be >= 1");
    if (eqs.empty() && ineqs.empty()) throw std::invalid_argument("mixed_bound: no functions");
    Provenance prov{"",
                    {{"measure", measure.name()},
                     {"n", std::to_string(n)},
                     {"eqs", vec_list(eqs)},
                     {"ineqs", vec_list(ineqs)}},
                    {},
                    {}};
    if (eqs.empty())
        return half_gamma_bound("mixed", measure, n, NormTimesProduct{as_descriptors(ineqs)},
                                std::move(prov));
    return half_gamma_bound("mixed", measure, n,
                            MixedRecipe{as_descriptors(eqs), as_descriptors(ineqs)}, std::move(prov));
}

Bound sign_conditions_bound(std::size_t i, std::size_t s, std::size_t n_prime, const Bound& omega) {
    if (i > n_prime) throw std::domain_error("sign_conditions_bound: homology degree exceeds n'");
    Nat factor = 0;
    for (std::size_t j = 0; j + i <= n_prime; ++j)
        factor += binomial(Nat(s), Nat(j)) * nat_pow(4, Nat(j));
    Provenance prov{"sign_conditions",
                    {{"i", std::to_string(i)},
                     {"s", std::to_string(s)},
                     {"n_prime", std::to_string(n_prime)},
                     {"omega", omega.value.str()}},
                    {},
                    {"binomial factor = " + factor.str()}};
    return make_bound(factor * omega.value, std::move(prov));
}

Bound closed_set_bound(std::size_t s, std::size_t n_prime, const Bound& omega) {
    Nat factor = 0;
    for (std::size_t i = 0; i <= n_prime; ++i)
        for (std::size_t j = 0; j + i <= n_prime; ++j)
            factor += binomial(Nat(s), Nat(j)) * nat_pow(6, Nat(j));
    Provenance prov{"closed_set",
                    {{"s", std::to_string(s)},
                     {"n_prime", std::to_string(n_prime)},
                     {"omega", omega.value.str()}},
                    {},
                    {"binomial factor = " + factor.str()}};
    return make_bound(factor * omega.value, std::move(prov));
}

Bound boolean_combination_bound(std::size_t n, std::size_t s, const Bound& omega_prime) {
    if (s == 0) throw std::invalid_argument("boolean_combination_bound: s must be >= 1");
    const Nat top = 2 * Nat(s) * Nat(s) + 1;
    Nat factor = 0;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 1; j + i <= n; ++j)
            factor += binomial(top, Nat(j)) * nat_pow(6, Nat(j));
    Provenance prov{"boolean_combination",
                    {{"n", std::to_string(n)},
                     {"s", std::to_string(s)},
                     {"closed_atoms", top.str()},
                     {"omega_prime", omega_prime.value.str()}},
                    {},
                    {"binomial factor = " + factor.str()}};
    return make_bound(factor * omega_prime.value, std::move(prov));
}

Bound projection_bound(const ComplexityMeasure& measure, std::size_t k, std::size_t n,
                       std::size_t fiber_dim, std::size_t s,
                       const std::vector<ComplexityVector>& fs, const OConstants& consts) {
    if (fs.empty()) throw std::invalid_argument("projection_bound: empty function list");
    const std::uint64_t c = consts.get("projection_sum");
    const Nat kk(k);
    const Nat coeff = (kk * kk * kk + 4 * kk * kk + 5 * kk + 2) / 2 * Nat(s);
    const Nat exponent = Nat(n) + (kk + 1) * Nat(fiber_dim);

    const CompositeRecipe recipe = SumSquaresPlusNorm{as_descriptors(fs)};
    Nat gamma_sum = 0;
    Provenance prov{"projection",
                    {{"measure", measure.name()},
                     {"k", std::to_string(k)},
                     {"n", std::to_string(n)},
                     {"fiber_dim", std::to_string(fiber_dim)},
                     {"s", std::to_string(s)}},
                    {{"projection_sum", c}},
                    {}};
    for (std::size_t p = 0; p <= k; ++p) {
        const std::size_t dim = n + (p + 1) * fiber_dim;
        const ComplexityVector composite = composite_complexity(measure, recipe, dim);
        const Nat g = gamma_value(measure, dim, composite);
        prov.trace.push_back("gamma(" + std::to_string(dim) + ", " + composite.str() + ") = " + g.str());
        gamma_sum += g;
    }
    prov.trace.push_back("coefficient = " + coeff.str() + ", exponent = " + exponent.str());
    return make_bound(nat_pow(coeff, exponent) * Nat(c) * gamma_sum, std::move(prov));
}

Bound quantified_bound(const ComplexityMeasure& measure, const QuantifierProfile& profile,
                       std::size_t s, const ComplexityVector& atom_complexity,
                       const OConstants& consts) {
    if (s == 0) throw std::invalid_argument("quantified_bound: s must be >= 1");
    const std::size_t nu = profile.nu();
    const std::uint64_t c = consts.get("quantified_exponent");

    const Nat u_nu = profile.u(nu);
    const Nat base = nat_pow(2, Nat(nu) * Nat(nu)) * nat_pow(u_nu, nu) * Nat(s) * profile.w(nu - 1);
    const Nat exponent = Nat(c) * nat_pow(2 * u_nu, nu) * profile.w(nu);

    const Nat t_nu = profile.t(nu);
    if (t_nu > 1000000)
        throw std::domain_error("quantified_bound: t_nu = " + t_nu.str() +
                                " is beyond evaluable range for Omega(F)");
    const std::size_t dim = t_nu.convert_to<std::size_t>();
    const Nat omega_f =
        omega_single_value(measure, dim, {atom_complexity, measure.norm_squared()});

    const Bound atoms = atom_count(profile, s, consts);

    Provenance prov{"quantified",
                    {{"measure", measure.name()},
                     {"profile", profile.str()},
                     {"s", std::to_string(s)},
                     {"atom_complexity", atom_complexity.str()},
                     {"t_nu", t_nu.str()},
                     {"summand_atoms", atoms.value.str()}},
                    {{"quantified_exponent", c}},
                    {"base = " + base.str(), "exponent = " + exponent.str(),
                     "Omega(F) over R^t_nu = " + omega_f.str()}};
    return make_bound(nat_pow(base, exponent) * omega_f, std::move(prov));
}

Bound atom_count(const QuantifierProfile& profile, std::size_t s, const OConstants& /*consts*/) {
    const std::size_t nu = profile.nu();
    Provenance prov{"atom_count", {{"profile", profile.str()}, {"s", std::to_string(s)}}, {}, {}};
    if (nu == 1) {
        // One quantifier: the T construction uses 4(n+1)s non-strict
        // inequalities over the ambient n = n_0 + n_1.
        const Nat count = 4 * (profile.u(1) + 1) * Nat(s);
        prov.trace.push_back("nu=1: 4(n_0+n_1+1)s = " + count.str());
        return make_bound(count, std::move(prov));
    }
    const Nat u_nu = profile.u(nu);
    const Nat t_nm1 = profile.t(nu - 1);
    const Nat t_nm2 = profile.t(nu - 2);
    const Nat n_nu = Nat(profile.widths()[nu]);

    const Nat head = (2 * t_nm2 + 1) * 4 * Nat(s) * u_nu + 2 * t_nm1 + 2 * n_nu;
    // The printed B-term leaves r free under the union over 2 <= r <= nu-1;
    // taking the max over r keeps the expression an upper bound.
    Nat b_term = 0;
    for (std::size_t r = 2; r + 1 <= nu; ++r) {
        Nat tail = 0;
        for (std::size_t j = r; j <= nu; ++j) tail += profile.widths()[j];
        const Nat candidate = (4 * profile.t(r - 1) + 2 * tail) * (2 * t_nm2 + 1) + 2 * t_nm1 + 2 * n_nu;
        b_term = nat_max(b_term, candidate);
    }
    const Nat count = (head + b_term * Nat(nu - 2)) * (t_nm1 + 1);
    prov.trace.push_back("head = " + head.str());
    prov.trace.push_back("B term = " + b_term.str());
    prov.trace.push_back("count = (head + B(nu-2)) (t_{nu-1}+1) = " + count.str());
    return make_bound(count, std::move(prov));
}

Bound term_count(const QuantifierProfile& profile, std::size_t i, const OConstants& consts) {
    if (i < 2) throw std::domain_error("term_count: defined for i >= 2");
    if (i > profile.nu()) throw std::domain_error("term_count: i exceeds the number of quantifiers");
    const std::uint64_t c = consts.get("term_count_exponent");
    const Nat exponent = Nat(c) * Nat(i) * Nat(i) * nat_pow(2 * profile.u(profile.nu()), i) * profile.w(i - 2);
    Provenance prov{"term_count",
                    {{"profile", profile.str()}, {"i", std::to_string(i)}},
                    {{"term_count_exponent", c}},
                    {"exponent = " + exponent.str()}};
    return make_bound(nat_pow(2, exponent), std::move(prov));
}

std::vector<Bound> t_sequence(const QuantifierProfile& profile) {
    std::vector<Bound> out;
    for (std::size_t j = 0; j <= profile.nu(); ++j) {
        Provenance prov{"t_sequence",
                        {{"profile", profile.str()}, {"j", std::to_string(j)}},
                        {},
                        {"cap = (2|K|)^j w_j + 1 = " +
                         Nat(nat_pow(2 * profile.k_cap(), j) * profile.w(j) + 1).str()}};
        out.push_back(make_bound(profile.t(j), std::move(prov)));
    }
    return out;
}

Bound mv_union_bound(std::size_t i, std::size_t piece_count,
                     const std::map<std::uint64_t, Bound>& piece_bounds,
                     const std::set<std::uint64_t>& empty_intersections) {
    if (piece_count == 0 || piece_count > 63)
        throw std::invalid_argument("mv_union_bound: piece count out of range");
    const std::uint64_t full = (piece_count == 63) ? ~0ull : ((1ull << piece_count) - 1);
    for (const auto& [mask, bound] : piece_bounds) {
        (void)bound;
        if (mask == 0 || (mask & ~full) != 0)
            throw std::invalid_argument("mv_union_bound: subset mask inconsistent with piece count");
    }
    Nat total = 0;
    std::size_t used = 0;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (size > i + 1) continue;  // degree i - |J| + 1 < 0 contributes nothing
        auto it = piece_bounds.find(mask);
        if (it != piece_bounds.end()) {
            total += it->second.value;
            ++used;
            continue;
        }
        if (empty_intersections.count(mask)) continue;
        throw std::invalid_argument("mv_union_bound: missing bound for subset mask " +
                                    std::to_string(mask));
    }
    Provenance prov{"mv_union",
                    {{"i", std::to_string(i)},
                     {"pieces", std::to_string(piece_count)},
                     {"subsets_summed", std::to_string(used)}},
                    {},
                    {}};
    return make_bound(total, std::move(prov));
}

Bound alexander_dual(std::size_t q, std::size_t n, const Bound& reduced_augmented) {
    if (q >= n) throw std::domain_error("alexander_dual: requires q <= n-1");
    Provenance prov{"alexander_dual",
                    {{"q", std::to_string(q)},
                     {"n", std::to_string(n)},
                     {"source_degree", std::to_string(n - q - 1)},
                     {"source", reduced_augmented.provenance.theorem}},
                    {},
                    {}};
    return make_bound(reduced_augmented.value, std::move(prov));
}

Bound reduced_from_unreduced(std::size_t degree, const Bound& unreduced) {
    Provenance prov = unreduced.provenance;
    if (degree == 0) {
        prov.trace.push_back("reduced adjustment at degree 0: -1");
        return make_bound(monus(unreduced.value, 1), std::move(prov));
    }
    return make_bound(unreduced.value, std::move(prov));
}

Bound fiber_product_bound(std::size_t k, const std::vector<Bound>& w_bounds) {
    if (w_bounds.size() != k + 1)
        throw std::invalid_argument("fiber_product_bound: need exactly k+1 bounds (one per p)");
    Nat total = 0;
    for (const auto& b : w_bounds) total += b.value;
    Provenance prov{"fiber_product", {{"k", std::to_string(k)}}, {}, {}};
    return make_bound(total, std::move(prov));
}

}  // namespace bettibounds
