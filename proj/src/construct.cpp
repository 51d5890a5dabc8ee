#include "bettibounds/construct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bettibounds {

std::size_t SignCondition::level() const {
    return static_cast<std::size_t>(std::count(signs.begin(), signs.end(), 0));
}

std::string SignCondition::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < signs.size(); ++i)
        os << (i ? "," : "") << (signs[i] > 0 ? "+" : signs[i] < 0 ? "-" : "0");
    os << ')';
    return os.str();
}

namespace {

struct Witnessed {
    std::set<SignCondition> conditions;
    std::set<SignCondition> boundary_conditions;  // witnessed on the outer lattice shell
};

Witnessed witness_signs(const std::vector<FnPtr>& fs, const GridSpec& grid) {
    for (const auto& f : fs)
        if (!f->is_concrete())
            throw std::invalid_argument("sign_decompose: abstract descriptor is not evaluable");
    if (grid.points_per_axis < 2) throw std::invalid_argument("sign_decompose: need >= 2 grid points");

    std::size_t n = 0;
    for (const auto& f : fs) n = std::max(n, f->poly().n_vars());

    Witnessed out;
    if (n == 0) {
        // No variables anywhere: one condition, the signs of the constants.
        SignCondition sigma;
        for (const auto& f : fs) {
            const Rat v = f->poly().eval({});
            sigma.signs.push_back(v > 0 ? 1 : v < 0 ? -1 : 0);
        }
        out.conditions.insert(sigma);
        return out;
    }

    const std::size_t P = grid.points_per_axis;
    std::vector<Rat> axis(P);
    for (std::size_t k = 0; k < P; ++k)
        axis[k] = -grid.radius + Rat(2 * static_cast<long long>(k), static_cast<long long>(P - 1)) *
                                     grid.radius;

    std::vector<std::size_t> idx(n, 0);
    std::vector<Rat> point(n);
    for (;;) {
        bool on_boundary = false;
        for (std::size_t a = 0; a < n; ++a) {
            point[a] = axis[idx[a]];
            on_boundary = on_boundary || idx[a] == 0 || idx[a] + 1 == P;
        }
        SignCondition sigma;
        sigma.signs.reserve(fs.size());
        for (const auto& f : fs) {
            std::vector<Rat> sub(point.begin(), point.begin() + static_cast<long>(f->poly().n_vars()));
            const Rat v = f->poly().eval(sub);
            sigma.signs.push_back(v > 0 ? 1 : v < 0 ? -1 : 0);
        }
        if (on_boundary) out.boundary_conditions.insert(sigma);
        out.conditions.insert(std::move(sigma));

        std::size_t a = 0;
        while (a < n && ++idx[a] == P) idx[a++] = 0;
        if (a == n) break;
    }
    return out;
}

Formula atom_shifted(const FnPtr& f, const Rat& shift, Rel rel) {
    // Builds (f + shift) rel 0 as a fresh concrete atom.
    return Formula::atom(f->poly() + shift, rel);
}

/// Conjunction describing one thickened sign set.
Formula thickened_condition(const std::vector<FnPtr>& fs, const SignCondition& sigma,
                            const Rat& delta, const Rat* eps) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        switch (sigma.signs[i]) {
            case 1: parts.push_back(atom_shifted(fs[i], -delta, Rel::GE)); break;
            case -1: parts.push_back(atom_shifted(fs[i], delta, Rel::LE)); break;
            default:
                if (eps) {
                    parts.push_back(atom_shifted(fs[i], -*eps, Rel::LE));  // f - eps <= 0
                    parts.push_back(atom_shifted(fs[i], *eps, Rel::GE));   // f + eps >= 0
                } else {
                    parts.push_back(Formula::atom(fs[i], Rel::EQ));
                }
        }
    }
    return Formula::and_of(std::move(parts));
}

Formula thickened_union(const Formula& f, const EpsilonSchedule& schedule, std::size_t k,
                        const GridSpec& grid, bool with_eps) {
    if (k > schedule.chain_length())
        throw std::out_of_range("schedule exhausted: chain index " + std::to_string(k) + " > m=" +
                                std::to_string(schedule.chain_length()));
    const Formula norm = normalize(f);
    const std::vector<FnPtr> fs = atoms_of(norm);
    const auto witnessed = witness_signs(fs, grid);

    const Rat delta = schedule.delta(k);
    const Rat eps = schedule.epsilon(k);
    std::vector<Formula> pieces;
    for (const SignCondition& sigma : witnessed.conditions) {
        if (!formula_holds_under_signs(norm, fs, sigma)) continue;
        pieces.push_back(thickened_condition(fs, sigma, delta, with_eps ? &eps : nullptr));
    }

    // Ball conjunct |x|^2 <= 1/delta keeps unbounded inputs representable.
    std::size_t n = formula_n_vars(norm);
    if (n == 0) n = 1;
    const Formula ball = Formula::atom(Polynomial::norm_squared(n) - Rat(1) / delta, Rel::LE);
    return normalize(Formula::and_of({Formula::or_of(std::move(pieces)), ball}));
}

}  // namespace

std::vector<SignCondition> sign_decompose(const std::vector<FnPtr>& fs, const GridSpec& grid) {
    if (fs.empty()) return {SignCondition{}};
    const auto witnessed = witness_signs(fs, grid);
    return {witnessed.conditions.begin(), witnessed.conditions.end()};
}

bool formula_holds_under_signs(const Formula& f, const std::vector<FnPtr>& fs,
                               const SignCondition& sigma) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Atom& a = f.as_atom();
            std::size_t pos = fs.size();
            for (std::size_t i = 0; i < fs.size(); ++i)
                if (*fs[i] == *a.fn) {
                    pos = i;
                    break;
                }
            if (pos == fs.size())
                throw std::invalid_argument("sign condition does not cover atom " + a.fn->str());
            const int s = sigma.signs[pos];
            switch (a.rel) {
                case Rel::EQ: return s == 0;
                case Rel::GT: return s > 0;
                case Rel::LT: return s < 0;
                case Rel::GE: return s >= 0;
                case Rel::LE: return s <= 0;
            }
            return false;
        }
        case Formula::Kind::Not:
            return !formula_holds_under_signs(f.children().front(), fs, sigma);
        case Formula::Kind::And:
            return std::all_of(f.children().begin(), f.children().end(), [&](const Formula& g) {
                return formula_holds_under_signs(g, fs, sigma);
            });
        case Formula::Kind::Or:
            return std::any_of(f.children().begin(), f.children().end(), [&](const Formula& g) {
                return formula_holds_under_signs(g, fs, sigma);
            });
    }
    return false;
}

Formula build_S_delta(const Formula& f, const EpsilonSchedule& schedule, std::size_t k,
                      const GridSpec& grid) {
    return thickened_union(f, schedule, k, grid, /*with_eps=*/false);
}

Formula build_S_delta_eps(const Formula& f, const EpsilonSchedule& schedule, std::size_t k,
                          const GridSpec& grid) {
    return thickened_union(f, schedule, k, grid, /*with_eps=*/true);
}

Formula build_T(const Formula& f, const Rat& lambda, std::size_t m, const GridSpec& grid) {
    if (m < 1) throw std::invalid_argument("build_T: chain length m must be >= 1");
    const EpsilonSchedule schedule(lambda, m);
    std::vector<Formula> members;
    members.reserve(m + 1);
    for (std::size_t k = 0; k <= m; ++k)
        members.push_back(build_S_delta_eps(f, schedule, k, grid));
    return normalize(Formula::or_of(std::move(members)));
}

namespace {

Formula reali_closed(const std::vector<FnPtr>& fs, const SignCondition& sigma, const Rat& eps) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        switch (sigma.signs[i]) {
            case 1: parts.push_back(Formula::atom(fs[i], Rel::GE)); break;
            case -1: parts.push_back(Formula::atom(fs[i], Rel::LE)); break;
            default:
                parts.push_back(atom_shifted(fs[i], -eps, Rel::LE));
                parts.push_back(atom_shifted(fs[i], eps, Rel::GE));
        }
    }
    return Formula::and_of(std::move(parts));
}

Formula reali_open(const std::vector<FnPtr>& fs, const SignCondition& sigma, const Rat& eps) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        switch (sigma.signs[i]) {
            case 1: parts.push_back(Formula::atom(fs[i], Rel::GT)); break;
            case -1: parts.push_back(Formula::atom(fs[i], Rel::LT)); break;
            default:
                parts.push_back(atom_shifted(fs[i], -eps, Rel::LT));
                parts.push_back(atom_shifted(fs[i], eps, Rel::GT));
        }
    }
    return Formula::and_of(std::move(parts));
}

}  // namespace

Formula closed_approximation(const Formula& f, const Rat& lambda, const GridSpec& grid) {
    const Formula norm = normalize(f);
    const std::vector<FnPtr> fs = atoms_of(norm);
    const std::size_t t = fs.size();
    if (t == 0) return norm;

    const auto witnessed = witness_signs(fs, grid);
    for (const SignCondition& sigma : witnessed.boundary_conditions) {
        if (formula_holds_under_signs(norm, fs, sigma))
            throw std::invalid_argument(
                "closed_approximation: set reaches the sampling box boundary; clip to a ball first");
    }

    const EpsilonSchedule schedule(lambda, t);

    std::vector<std::vector<SignCondition>> sigma_in(t + 1), sigma_out(t + 1);
    for (const SignCondition& sigma : witnessed.conditions) {
        const std::size_t level = sigma.level();
        if (formula_holds_under_signs(norm, fs, sigma)) sigma_in[level].push_back(sigma);
        else sigma_out[level].push_back(sigma);
    }

    Formula x = norm;
    for (std::size_t m = 0; m <= t; ++m) {
        // eps_{2m} for closed bands, eps_{2m-1} for open bands; level-0
        // conditions have no vanishing functions, so the values are unused
        // there (and eps_{-1} never materializes).
        const Rat eps_closed = m == 0 ? Rat(0) : schedule.lambda_power(2 * m);
        const Rat eps_open = m == 0 ? Rat(0) : schedule.lambda_power(2 * m - 1);

        std::vector<Formula> adds{x};
        for (const SignCondition& sigma : sigma_in[m])
            adds.push_back(reali_closed(fs, sigma, eps_closed));
        Formula grown = Formula::or_of(std::move(adds));

        if (!sigma_out[m].empty()) {
            std::vector<Formula> subs;
            for (const SignCondition& sigma : sigma_out[m])
                subs.push_back(reali_open(fs, sigma, eps_open));
            grown = Formula::and_of({std::move(grown), Formula::not_of(Formula::or_of(std::move(subs)))});
        }
        x = normalize(grown);
    }
    return x;
}

}  // namespace bettibounds
