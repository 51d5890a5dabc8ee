#include <doctest.h>

#include <sstream>

#include "bettibounds/complexity.hpp"
#include "bettibounds/rules.hpp"

using namespace bettibounds;

namespace {

// Closed forms for the degree instance, evaluated independently of the rule
// machinery.
Nat degree_gamma_closed(std::size_t n, const Nat& d) {
    if (d == 0) return 0;
    return d * nat_pow(d - 1, Nat(n - 1));
}

Nat pfaffian_gamma_closed(std::size_t n, const Nat& a, const Nat& b, const Nat& r) {
    // 2^{r(r-1)/2} b (a+b-1)^{n-1} (min{n,r} a + n b + (n-1) a - 2n + 2)^r
    const Nat base = nat_min(Nat(n), r) * a + Nat(n) * b + Nat(n - 1) * a - 2 * Nat(n) + 2;
    return nat_pow(2, r * (r - 1) / 2) * b * nat_pow(a + b - 1, Nat(n - 1)) * nat_pow(base, r);
}

}  // namespace

TEST_CASE("fold_complexity on the degree measure") {
    const auto deg = degree_measure();
    CHECK(fold_complexity(*deg, FoldOp::Times, {ComplexityVector{2}, ComplexityVector{2}, ComplexityVector{2}}) ==
          ComplexityVector{6});
    CHECK(fold_complexity(*deg, FoldOp::Plus, {ComplexityVector{3}, ComplexityVector{1}, ComplexityVector{2}}) ==
          ComplexityVector{3});
    CHECK(fold_complexity(*deg, FoldOp::Plus, {ComplexityVector{7}}) == ComplexityVector{7});

    CHECK_THROWS_AS(fold_complexity(*deg, FoldOp::Plus, {}), std::invalid_argument);
    CHECK_THROWS_AS(fold_complexity(*deg, FoldOp::Plus, {ComplexityVector{1, 2, 3}}), ArityMismatch);
}

TEST_CASE("fold is associative for degree max/sum over small triples") {
    const auto deg = degree_measure();
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                const ComplexityVector va{Nat(a)}, vb{Nat(b)}, vc{Nat(c)};
                for (FoldOp op : {FoldOp::Plus, FoldOp::Times}) {
                    const auto left = deg->plus(va, vb);
                    const auto l2 = op == FoldOp::Plus ? deg->plus(deg->plus(va, vb), vc)
                                                       : deg->times(deg->times(va, vb), vc);
                    const auto r2 = op == FoldOp::Plus ? deg->plus(va, deg->plus(vb, vc))
                                                       : deg->times(va, deg->times(vb, vc));
                    CHECK(l2 == r2);
                    (void)left;
                }
            }
}

TEST_CASE("partial_complexity") {
    const auto deg = degree_measure();
    CHECK(partial_complexity(*deg, ComplexityVector{5}) == ComplexityVector{4});
    CHECK(partial_complexity(*deg, ComplexityVector{1}) == ComplexityVector{0});
    CHECK(partial_complexity(*deg, ComplexityVector{0}) == ComplexityVector{0});

    const auto pf = pfaffian_measure();
    CHECK(partial_complexity(*pf, ComplexityVector{2, 3, 1}) == ComplexityVector{2, 4, 1});
    CHECK_THROWS_AS(partial_complexity(*pf, ComplexityVector{2}), ArityMismatch);
}

TEST_CASE("kappa closed forms") {
    const auto deg = degree_measure();
    const auto pf = pfaffian_measure();
    CHECK(kappa(*deg, ComplexityVector{4}) == ComplexityVector{3});
    CHECK(kappa(*deg, ComplexityVector{1}) == ComplexityVector{0});
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
            for (int r = 0; r <= 4; ++r)
                CHECK(kappa(*pf, ComplexityVector{Nat(a), Nat(b), Nat(r)}) ==
                      ComplexityVector{Nat(a), Nat(a + b - 1), Nat(r)});
}

TEST_CASE("gamma matches d(d-1)^{n-1} exhaustively for d <= 50, n <= 10") {
    const auto deg = degree_measure();
    for (std::size_t n = 1; n <= 10; ++n)
        for (int d = 1; d <= 50; ++d)
            CHECK(gamma_value(*deg, n, ComplexityVector{Nat(d)}) == degree_gamma_closed(n, Nat(d)));
    CHECK(gamma_value(*deg, 3, ComplexityVector{3}) == 12);
    CHECK(gamma_value(*deg, 1, ComplexityVector{9}) == 9);
    CHECK_THROWS_AS(gamma_value(*deg, 0, ComplexityVector{3}), std::domain_error);
}

TEST_CASE("gamma matches the Pfaffian closed form") {
    const auto pf = pfaffian_measure();
    for (std::size_t n = 1; n <= 4; ++n)
        for (int a = 1; a <= 5; ++a)
            for (int b = 1; b <= 5; ++b)
                for (int r = 0; r <= 4; ++r)
                    CHECK(gamma_value(*pf, n, ComplexityVector{Nat(a), Nat(b), Nat(r)}) ==
                          pfaffian_gamma_closed(n, Nat(a), Nat(b), Nat(r)));
    CHECK(gamma_value(*pf, 1, ComplexityVector{1, 1, 1}) == 2);
}

TEST_CASE("gamma is monotone in n and in each entry") {
    const auto deg = degree_measure();
    // d = 1 is the genuine boundary case: d(d-1)^{n-1} is 1 at n = 1 and 0
    // after, so the n-monotonicity grid starts at d = 2.
    for (int d = 2; d <= 8; ++d)
        for (std::size_t n = 1; n <= 5; ++n) {
            CHECK(gamma_value(*deg, n + 1, ComplexityVector{Nat(d)}) >=
                  gamma_value(*deg, n, ComplexityVector{Nat(d)}));
            CHECK(gamma_value(*deg, n, ComplexityVector{Nat(d + 1)}) >=
                  gamma_value(*deg, n, ComplexityVector{Nat(d)}));
        }
    const auto pf = pfaffian_measure();
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int r = 0; r <= 3; ++r)
                for (std::size_t n = 1; n <= 3; ++n) {
                    const ComplexityVector c{Nat(a), Nat(b), Nat(r)};
                    const Nat here = gamma_value(*pf, n, c);
                    CHECK(gamma_value(*pf, n + 1, c) >= here);
                    CHECK(gamma_value(*pf, n, ComplexityVector{Nat(a + 1), Nat(b), Nat(r)}) >= here);
                    CHECK(gamma_value(*pf, n, ComplexityVector{Nat(a), Nat(b + 1), Nat(r)}) >= here);
                    CHECK(gamma_value(*pf, n, ComplexityVector{Nat(a), Nat(b), Nat(r + 1)}) >= here);
                }
}

TEST_CASE("khovanskii_tn") {
    CHECK(khovanskii_tn_value(1, {PfaffianComplexity(1, 2, 1)}) == 6);
    CHECK(khovanskii_tn_value(1, {PfaffianComplexity(1, 1, 0)}) == 1);
    CHECK(khovanskii_tn_value(2, {PfaffianComplexity(1, 1, 1), PfaffianComplexity(1, 1, 1)}) == 2);
    CHECK_THROWS_AS(khovanskii_tn_value(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(khovanskii_tn_value(2, {PfaffianComplexity(1, 1, 1)}), std::invalid_argument);
}

TEST_CASE("omega closed forms") {
    const auto deg = degree_measure();
    // All degrees <= d in F and G: Omega = d(2d-1)^{n-1}.
    for (int d = 1; d <= 6; ++d)
        for (std::size_t n = 1; n <= 5; ++n) {
            const std::vector<ComplexityVector> F{ComplexityVector{Nat(d)}};
            const std::vector<ComplexityVector> G{ComplexityVector{Nat(d)}};
            CHECK(omega_value(*deg, n, F, G) == Nat(d) * nat_pow(2 * Nat(d) - 1, Nat(n - 1)));
        }
    // n=1, d=1: a linear family on the line.
    CHECK(omega_value(*deg, 1, {ComplexityVector{1}}, {}) == 1);
    CHECK_THROWS_AS(omega_value(*deg, 2, {}, {}), std::invalid_argument);

    // Overriding the |x|^2 complexity replaces the default entry.
    CHECK(omega_value(*deg, 2, {ComplexityVector{1}}, {}, ComplexityVector{4}) ==
          ceil_half(gamma_value(*deg, 2, ComplexityVector{4})));
    CHECK_THROWS_AS(omega_value(*deg, 2, {ComplexityVector{1}}, {}, ComplexityVector{1, 2}),
                    ArityMismatch);

    const auto pf = pfaffian_measure();
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
            for (int r = 0; r <= 4; ++r)
                for (std::size_t n = 1; n <= 4; ++n) {
                    const ComplexityVector c{Nat(a), Nat(b), Nat(r)};
                    const Nat expected = pfaffian_gamma_closed(n, Nat(a), Nat(2) * Nat(b), Nat(r)) / 2;
                    CHECK(omega_value(*pf, n, {c}, {c}) == expected);
                }
}

TEST_CASE("constant absorption holds for both shipped instances") {
    for (const auto& m : {degree_measure(), pfaffian_measure()}) {
        CHECK(validate_measure(*m).empty());
        const ComplexityVector zero = ComplexityVector::zeros(m->arity());
        std::vector<Nat> ramp;
        for (std::size_t i = 0; i < m->arity(); ++i) ramp.emplace_back(i + 1);
        const ComplexityVector v(std::move(ramp));
        CHECK(fold_complexity(*m, FoldOp::Plus, {v, zero}) == v);
        CHECK(fold_complexity(*m, FoldOp::Times, {v, zero}) == v);
    }
}

TEST_CASE("rule maps are monotone for both instances (sampled)") {
    for (const auto& m : {degree_measure(), pfaffian_measure()}) {
        const std::size_t arity = m->arity();
        auto sample = [&](int seed) {
            std::vector<Nat> v;
            for (std::size_t i = 0; i < arity; ++i) v.emplace_back((seed >> (2 * i)) & 3);
            if (arity == 3 && v[0] == 0) v[0] = 1;  // keep alpha plausible
            return ComplexityVector(std::move(v));
        };
        auto leq = [](const ComplexityVector& a, const ComplexityVector& b) {
            for (std::size_t i = 0; i < a.arity(); ++i)
                if (a[i] > b[i]) return false;
            return true;
        };
        for (int sa = 0; sa < 32; ++sa)
            for (int sb = 0; sb < 32; ++sb) {
                const auto a = sample(sa), b = sample(sb);
                std::vector<Nat> bumped = a.entries();
                bumped[sa % arity] += 1;
                const ComplexityVector a2(std::move(bumped));
                CHECK(leq(m->plus(a, b), m->plus(a2, b)));
                CHECK(leq(m->times(a, b), m->times(a2, b)));
                CHECK(leq(m->partial(a), m->partial(a2)));
            }
    }
}

TEST_CASE("pfaffian split-chain order rule adds orders") {
    const auto split = pfaffian_measure(false);
    CHECK(split->plus(ComplexityVector{1, 1, 2}, ComplexityVector{1, 1, 3}) ==
          ComplexityVector{1, 1, 5});
    const auto shared = pfaffian_measure(true);
    CHECK(shared->plus(ComplexityVector{1, 1, 2}, ComplexityVector{1, 1, 3}) ==
          ComplexityVector{1, 1, 3});
}

TEST_CASE("measure registry finds built-ins and rejects bad user measures") {
    MeasureRegistry registry;
    CHECK(registry.find("degree")->arity() == 1);
    CHECK(registry.find("pfaffian")->arity() == 3);
    CHECK_THROWS_AS(registry.find("nonesuch"), std::invalid_argument);

    // A measure whose t_+ ignores constant absorption must be rejected.
    auto bad = std::make_shared<ComplexityMeasure>(
        "bad", 1,
        [](const ComplexityVector& a, const ComplexityVector& b) {
            return ComplexityVector{a[0] + b[0] + 1};
        },
        [](const ComplexityVector& a, const ComplexityVector& b) {
            return ComplexityVector{a[0] + b[0]};
        },
        [](const ComplexityVector& a) { return a; },
        [](std::size_t, const std::vector<ComplexityVector>&) { return Nat(1); },
        ComplexityVector{2});
    CHECK_THROWS_AS(registry.add(bad), std::invalid_argument);
}

TEST_CASE("declarative rule files reproduce the degree measure") {
    std::istringstream in(R"(
[measure]
name = degree-clone
arity = 1
norm_sq = 2
plus.1 = max(a1, b1)
times.1 = a1 + b1
partial.1 = a1 - 1
solution = prod(e1)
poly.1 = d
)");
    const MeasurePtr clone = load_measure_file(in, "<test>");
    MeasureRegistry registry;
    registry.add(clone);

    const auto deg = degree_measure();
    for (int d = 1; d <= 10; ++d)
        for (std::size_t n = 1; n <= 4; ++n)
            CHECK(gamma_value(*clone, n, ComplexityVector{Nat(d)}) ==
                  gamma_value(*deg, n, ComplexityVector{Nat(d)}));
    CHECK(clone->from_degree(7) == ComplexityVector{7});
}

TEST_CASE("rule files reject unknown keys and malformed expressions") {
    {
        std::istringstream in("[measure]\nname = x\narity = 1\nnorm_sq = 2\nplus.1 = a1\n"
                              "times.1 = a1\npartial.1 = a1\nsolution = prod(e1)\nwat = 1\n");
        CHECK_THROWS_AS(load_measure_file(in, "<test>"), std::invalid_argument);
    }
    {
        std::istringstream in("[measure]\nname = x\narity = 1\nnorm_sq = 2\nplus.1 = max(a1\n"
                              "times.1 = a1\npartial.1 = a1\nsolution = prod(e1)\n");
        CHECK_THROWS_AS(load_measure_file(in, "<test>"), std::invalid_argument);
    }
    {
        // e-variables outside solution rules are rejected.
        std::istringstream in("[measure]\nname = x\narity = 1\nnorm_sq = 2\nplus.1 = e1\n"
                              "times.1 = a1\npartial.1 = a1\nsolution = prod(e1)\n");
        CHECK_THROWS_AS(load_measure_file(in, "<test>"), std::invalid_argument);
    }
}

TEST_CASE("rule expressions cover the khovanskii shape") {
    // The Pfaffian t_n is expressible in the rule language.
    const std::string text =
        "2^((max(e3)*(max(e3)-1))/2) * prod(e2) * (min(n, max(e3))*max(e1) + sum(e2) - n + 1)^max(e3)";
    const RuleExpr rule = RuleExpr::parse(text, 3, RuleExpr::Context::Solution);
    const std::vector<ComplexityVector> args{ComplexityVector{1, 2, 1}};
    CHECK(rule.eval_solution(1, args) == khovanskii_tn_value(1, {PfaffianComplexity(1, 2, 1)}));
    const std::vector<ComplexityVector> args2{ComplexityVector{1, 1, 1}, ComplexityVector{1, 1, 1}};
    CHECK(rule.eval_solution(2, args2) == 2);
}
