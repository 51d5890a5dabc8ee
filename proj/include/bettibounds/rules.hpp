#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "bettibounds/complexity.hpp"

namespace bettibounds {

/// Compiled arithmetic rule over naturals, for measures declared in rule
/// files.  Expressions support + - (truncated) * / (floor) ^, integer
/// literals, max/min with two arguments, and, in solution rules, the
/// aggregates prod(...), sum(...), max(...), min(...) ranging over the n
/// argument vectors with e1..em bound to the current vector's entries.
class RuleExpr {
public:
    enum class Context { Binary, Unary, Solution, Degree };

    static RuleExpr parse(const std::string& text, std::size_t arity, Context context);

    /// Binary-rule evaluation: a1..am and b1..bm bound.
    Nat eval_binary(const ComplexityVector& a, const ComplexityVector& b) const;
    /// Partial-rule evaluation: a1..am bound.
    Nat eval_unary(const ComplexityVector& a) const;
    /// Solution-rule evaluation: n bound, aggregates range over cs.
    Nat eval_solution(std::size_t n, const std::vector<ComplexityVector>& cs) const;
    /// Degree-embedding evaluation: d bound to the polynomial's total degree.
    Nat eval_degree(const Nat& d) const;

    struct Node;

private:
    explicit RuleExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

/// Parses a declarative measure file:
///
///   [measure]
///   name = mymeasure
///   arity = 2
///   norm_sq = 2 0
///   plus.1 = max(a1, b1)
///   plus.2 = a2 + b2
///   times.1 = a1 + b1
///   times.2 = a2 + b2
///   partial.1 = a1 - 1
///   partial.2 = a2
///   solution = prod(e1)
///   poly.1 = d        # optional: complexity of a polynomial of degree d
///   poly.2 = 0
///
/// Every rule key for the declared arity is required (poly.* are optional;
/// without them the measure only accepts abstract descriptors); unknown keys
/// are rejected.  The resulting measure still has to pass the registry's
/// absorption probes.
MeasurePtr load_measure_file(std::istream& in, const std::string& origin);
MeasurePtr load_measure_path(const std::string& path);

}  // namespace bettibounds
