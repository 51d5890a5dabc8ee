#include <doctest.h>

#include "bettibounds/formula.hpp"
#include "bettibounds/parser.hpp"

using namespace bettibounds;

namespace {

const std::vector<std::string> kCorpus = {
    "x0^2 + x1^2 - 1 = 0",
    "x0^2 + x1^2 - 1 <= 0",
    "(x0 >= 0 & x1 > 0) | !(x0 = 0)",
    "!(x0^2 + x1^2 - 1 < 0)",
    "x0 > 0 & x0 < 0",
    "2*x0^2*x1 - 3/4*x1^2 + x0 x1 - 7 >= 0",
    "x0^3 - x1^2 + x0 = 0 | x0 - 1 > 0",
    "!(x0 = 0 & x1 = 0) & x0^2 + x1^2 - 1 < 0",
    "x0 = 0 | x1 = 0 | x2 = 0",
    "1/2 - x0 >= 0 & x0 + 1/2 >= 0 & x1 - x0^2 >= 0",
};

}  // namespace

TEST_CASE("parse examples from the grammar") {
    const Formula circle = parse_formula("x0^2 + x1^2 - 1 = 0");
    CHECK(circle.kind() == Formula::Kind::Atom);
    CHECK(circle.as_atom().rel == Rel::EQ);
    CHECK(circle.as_atom().fn->poly().total_degree() == 2);
    CHECK(circle.as_atom().fn->poly().n_vars() == 2);

    const Formula mix = parse_formula("(x0 >= 0 & x1 > 0) | !(x0 = 0)");
    CHECK(mix.kind() == Formula::Kind::Or);
    REQUIRE(mix.children().size() == 2);
    CHECK(mix.children()[0].kind() == Formula::Kind::And);
    CHECK(mix.children()[0].children()[0].as_atom().rel == Rel::GE);
    CHECK(mix.children()[0].children()[1].as_atom().rel == Rel::GT);
    CHECK(mix.children()[1].kind() == Formula::Kind::Not);

    CHECK_THROWS_AS(parse_formula("x0^2 +"), ParseError);
    CHECK_THROWS_AS(parse_formula("x0 & x1 > 0"), ParseError);
    CHECK_THROWS_AS(parse_formula("x0 > 1"), ParseError);
    CHECK_THROWS_AS(parse_formula("x3 > 0", 2), ParseError);  // unknown variable under declared n

    // Error positions are line:column.
    try {
        parse_formula("x0^2 +");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column >= 6);
    }
}

TEST_CASE("textually identical polynomials share a descriptor") {
    const Formula f = parse_formula("x0^2 - 1 > 0 & x0^2 - 1 < 0");
    CHECK(f.children()[0].as_atom().fn.get() == f.children()[1].as_atom().fn.get());
    CHECK(atoms_of(f).size() == 1);
}

TEST_CASE("normalize removes negations per the rewrite table") {
    const auto f = parse_formula("!(x0 > 0)");
    const Formula n = normalize(f);
    CHECK(n.kind() == Formula::Kind::Atom);
    CHECK(n.as_atom().rel == Rel::LE);

    const Formula trich = normalize(parse_formula("!(x0 = 0)"));
    CHECK(trich.kind() == Formula::Kind::Or);
    CHECK(trich.children()[0].as_atom().rel == Rel::GT);
    CHECK(trich.children()[1].as_atom().rel == Rel::LT);
    CHECK(atoms_of(trich).size() == 1);  // s does not grow

    CHECK(normalize(parse_formula("!(x0 >= 0)")).as_atom().rel == Rel::LT);
    CHECK(normalize(parse_formula("!(x0 <= 0)")).as_atom().rel == Rel::GT);
    CHECK(normalize(parse_formula("!(x0 < 0)")).as_atom().rel == Rel::GE);
}

TEST_CASE("normalize is idempotent and preserves membership on a 17^3 grid") {
    for (const std::string& text : kCorpus) {
        const Formula f = parse_formula(text, 3);
        const Formula n1 = normalize(f);
        const Formula n2 = normalize(n1);
        CHECK(n1 == n2);

        for (int ix = 0; ix < 17; ++ix)
            for (int iy = 0; iy < 17; ++iy)
                for (int iz = 0; iz < 17; ++iz) {
                    const std::vector<Rat> p{Rat(2 * ix - 16, 8), Rat(2 * iy - 16, 8),
                                             Rat(2 * iz - 16, 8)};
                    CHECK(eval_formula(f, p) == eval_formula(n1, p));
                }
    }
}

TEST_CASE("parse . print . parse is parse on the corpus") {
    for (const std::string& text : kCorpus) {
        const Formula once = parse_formula(text, 3);
        const Formula again = parse_formula(print_formula(once), 3);
        CHECK(once == again);
        // And printing is a fixed point from then on.
        CHECK(print_formula(once) == print_formula(again));
    }
}

TEST_CASE("classify") {
    CHECK(classify(normalize(parse_formula("x0 >= 0 & x1 >= 0"))) == SetClass::Closed);
    CHECK(classify(normalize(parse_formula("x0 > 0 | x1 < 0"))) == SetClass::Open);
    CHECK(classify(normalize(parse_formula("x0 >= 0 & x1 > 0"))) == SetClass::Mixed);
    CHECK(classify(normalize(parse_formula("x0 = 0"))) == SetClass::Closed);
    CHECK_THROWS_AS(classify(parse_formula("!(x0 > 0)")), std::invalid_argument);

    // Negation flips Closed and Open on negation-pure inputs.
    const std::vector<std::string> pure = {"x0 >= 0 & x1 <= 0", "x0 = 0 | x1 >= 0",
                                           "x0 > 0 & x1 > 0", "x0 < 0 | x1 > 0"};
    for (const auto& text : pure) {
        const Formula f = normalize(parse_formula(text));
        const Formula neg = normalize(Formula::not_of(f));
        const SetClass a = classify(f), b = classify(neg);
        if (a == SetClass::Closed) CHECK(b == SetClass::Open);
        if (a == SetClass::Open) CHECK(b == SetClass::Closed);
    }
}

TEST_CASE("atoms_of counts distinct functions") {
    CHECK(atoms_of(parse_formula("x0 = 0 & x0 > 0")).size() == 1);
    CHECK(atoms_of(parse_formula("x0 = 0 & x1 > 0")).size() == 2);
    CHECK(atoms_of(Formula::and_of({})).empty());
}

TEST_CASE("empty connectives") {
    const std::vector<Rat> p{Rat(1), Rat(2)};
    CHECK(eval_formula(Formula::and_of({}), p));
    CHECK(!eval_formula(Formula::or_of({}), p));
}

TEST_CASE("quantified formulas") {
    const QuantifiedFormula qf = parse_quantified("E(2) A(1) : x0^2 + x3 - 1 = 0", 1);
    CHECK(qf.nu() == 2);
    CHECK(qf.free_dim() == 1);
    CHECK(qf.total_dim() == 4);
    CHECK(qf.blocks()[0].q == Quantifier::Exists);
    CHECK(qf.blocks()[1].q == Quantifier::ForAll);

    CHECK_THROWS_AS(parse_quantified("E(1) E(1) : x0 = 0", 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantified("E(0) : x0 = 0", 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantified("E(1) : x5 = 0", 1), ParseError);
    CHECK_THROWS_AS(parse_quantified(": x0 = 0", 1), ParseError);
}

TEST_CASE("composite complexity shapes under the degree measure") {
    const auto deg = degree_measure();
    auto poly_of_degree = [](unsigned d) {
        Polynomial p = Polynomial::variable(2, 0);
        return FunctionDescriptor::polynomial(p.pow(d));
    };
    CHECK(composite_complexity(*deg, SumSquaresPlusNorm{{poly_of_degree(2)}}, 2) ==
          ComplexityVector{4});
    // p functions of degree d: |x|^2 f_1 ... f_p has degree 2 + pd.
    for (unsigned p = 1; p <= 4; ++p)
        for (unsigned d = 1; d <= 4; ++d) {
            std::vector<FnPtr> fs;
            for (unsigned i = 0; i < p; ++i) fs.push_back(poly_of_degree(d));
            CHECK(composite_complexity(*deg, NormTimesProduct{fs}, 2) ==
                  ComplexityVector{Nat(2 + p * d)});
        }
    CHECK_THROWS_AS(composite_complexity(*deg, SumSquaresPlusNorm{{}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(composite_complexity(*deg, MixedRecipe{{}, {}}, 2), std::invalid_argument);
}

TEST_CASE("composite complexity under pfaffian") {
    const auto pf = pfaffian_measure();
    // Sum of squares plus the norm keeps (alpha, 2 beta, r).
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int r = 0; r <= 2; ++r) {
                const FnPtr f = FunctionDescriptor::abstract(ComplexityVector{Nat(a), Nat(b), Nat(r)});
                CHECK(composite_complexity(*pf, SumSquaresPlusNorm{{f}}, 2) ==
                      ComplexityVector{Nat(a), Nat(2 * b), Nat(r)});
            }
}

TEST_CASE("composite complexity equals the expanded total degree (oracle)") {
    // Literal polynomial expansion of each recipe for n <= 3, d <= 4.
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto deg = degree_measure();
        std::vector<Polynomial> gens;
        {
            for (unsigned d = 1; d <= 4; ++d) {
                Polynomial p = Polynomial::variable(n, 0).pow(d) + Polynomial::constant(n, Rat(1));
                for (std::size_t v = 1; v < n; ++v) p = p + Polynomial::variable(n, v);
                gens.push_back(p);
            }
        }
        const Polynomial norm = Polynomial::norm_squared(n);
        for (const Polynomial& f : gens)
            for (const Polynomial& g : gens) {
                const FnPtr fd = FunctionDescriptor::polynomial(f);
                const FnPtr gd = FunctionDescriptor::polynomial(g);

                const Polynomial ssq = f * f + g * g + norm;
                CHECK(composite_complexity(*deg, SumSquaresPlusNorm{{fd, gd}}, n) ==
                      ComplexityVector{ssq.total_degree()});

                const Polynomial prod = norm * f * g;
                CHECK(composite_complexity(*deg, NormTimesProduct{{fd, gd}}, n) ==
                      ComplexityVector{prod.total_degree()});

                const Polynomial mixed = norm * (f * f + g * g) * (f * f + g * g);
                CHECK(composite_complexity(*deg, MixedRecipe{{fd, gd}, {}}, n) ==
                      ComplexityVector{mixed.total_degree()});

                const Polynomial mixed2 = norm * (f * f) * (f * f) * g;
                CHECK(composite_complexity(*deg, MixedRecipe{{fd}, {gd}}, n) ==
                      ComplexityVector{mixed2.total_degree()});
            }
    }
}

TEST_CASE("descriptor complexity") {
    const auto deg = degree_measure();
    const auto pf = pfaffian_measure();
    const FnPtr poly = FunctionDescriptor::polynomial(parse_polynomial("x0^3 - x1"));
    CHECK(descriptor_complexity(*deg, *poly) == ComplexityVector{3});
    CHECK(descriptor_complexity(*pf, *poly) == ComplexityVector{1, 3, 0});
    const FnPtr abs = FunctionDescriptor::abstract(ComplexityVector{2, 5, 1});
    CHECK(descriptor_complexity(*pf, *abs) == ComplexityVector{2, 5, 1});
    CHECK_THROWS_AS(descriptor_complexity(*deg, *abs), ArityMismatch);
}

TEST_CASE("polynomial evaluation is exact") {
    const Polynomial p = parse_polynomial("1/3*x0^2 - 2*x1 + 7/2");
    CHECK(p.eval({Rat(3), Rat(1, 4)}) == Rat(3) + Rat(-1, 2) + Rat(7, 2));
    CHECK(Polynomial(2).eval({Rat(5), Rat(5)}) == 0);
    CHECK(Polynomial(2).total_degree() == 0);
}
