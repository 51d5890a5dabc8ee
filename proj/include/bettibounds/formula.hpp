#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bettibounds/complexity.hpp"
#include "bettibounds/polynomial.hpp"

namespace bettibounds {

/// A function known either abstractly (complexity vector only) or concretely
/// (evaluable sparse polynomial).
class FunctionDescriptor {
public:
    static std::shared_ptr<const FunctionDescriptor> abstract(ComplexityVector cvec);
    static std::shared_ptr<const FunctionDescriptor> polynomial(Polynomial poly);

    bool is_concrete() const { return poly_.has_value(); }
    const Polynomial& poly() const;
    const ComplexityVector& abstract_complexity() const;

    bool operator==(const FunctionDescriptor& other) const;
    std::string str() const;

private:
    FunctionDescriptor() = default;
    std::optional<ComplexityVector> cvec_;
    std::optional<Polynomial> poly_;
};

using FnPtr = std::shared_ptr<const FunctionDescriptor>;

/// Complexity of a descriptor under a measure: abstract vectors pass through
/// (arity-checked); polynomials go through the measure's degree embedding.
ComplexityVector descriptor_complexity(const ComplexityMeasure& measure, const FunctionDescriptor& fn);

enum class Rel { EQ, GT, LT, GE, LE };

const char* rel_token(Rel rel);  // "=", ">", "<", ">=", "<="

struct Atom {
    FnPtr fn;
    Rel rel;
};

/// Boolean tree over sign atoms.  An empty And is the whole space; an empty
/// Or is the empty set.
class Formula {
public:
    enum class Kind { Atom, And, Or, Not };

    static Formula atom(FnPtr fn, Rel rel);
    static Formula atom(Polynomial poly, Rel rel);
    static Formula and_of(std::vector<Formula> children);
    static Formula or_of(std::vector<Formula> children);
    static Formula not_of(Formula child);

    Kind kind() const { return kind_; }
    const Atom& as_atom() const;
    const std::vector<Formula>& children() const { return children_; }

    bool operator==(const Formula& other) const;

private:
    Formula() = default;
    Kind kind_ = Kind::And;
    std::optional<Atom> atom_;
    std::vector<Formula> children_;
};

/// Negation pushdown: the result contains no Not node; And/Or are flattened
/// and single-child nodes collapsed.  !(f=0) becomes (f>0 | f<0) so the
/// distinct-function count s does not grow.
Formula normalize(const Formula& f);

enum class SetClass { Closed, Open, Mixed };

const char* set_class_name(SetClass c);

/// Requires a normalized formula.  Closed: only EQ/GE/LE atoms.  Open: only
/// GT/LT.  Anything else is Mixed.  A formula without atoms classifies as
/// Closed (the whole space).
SetClass classify(const Formula& f);

/// Distinct function descriptors in first-appearance order; size() is the s
/// fed to the sign-condition machinery.
std::vector<FnPtr> atoms_of(const Formula& f);

/// Exact membership test; every descriptor must be concrete.  Points may have
/// more coordinates than an atom's polynomial uses.
bool eval_formula(const Formula& f, const std::vector<Rat>& point);

/// Number of variables needed to evaluate the formula (max over atoms).
std::size_t formula_n_vars(const Formula& f);

/// Canonical text in the module grammar; parse(print(parse(x))) == parse(x).
std::string print_formula(const Formula& f);

enum class Quantifier { Exists, ForAll };

struct QuantifierBlock {
    Quantifier q;
    std::size_t width;  // n_i >= 1
};

/// Q_1 x_1 ... Q_nu x_nu (matrix), with n_0 free variables.  Blocks slice the
/// variable indices left to right: free vars are x0..x{n_0-1}, block 1 the
/// next n_1 indices, and so on.
class QuantifiedFormula {
public:
    QuantifiedFormula(std::vector<QuantifierBlock> blocks, std::size_t free_dim, Formula matrix);

    const std::vector<QuantifierBlock>& blocks() const { return blocks_; }
    std::size_t free_dim() const { return free_dim_; }
    const Formula& matrix() const { return matrix_; }

    std::size_t nu() const { return blocks_.size(); }
    std::size_t total_dim() const;

    std::string str() const;

private:
    std::vector<QuantifierBlock> blocks_;
    std::size_t free_dim_;
    Formula matrix_;
};

// Composite-complexity recipes for the bound theorems.
struct SumSquaresPlusNorm {
    std::vector<FnPtr> fs;  // c(f_1^2 + ... + f_k^2 + |x|^2)
};
struct NormTimesProduct {
    std::vector<FnPtr> fs;  // c(|x|^2 f_1 ... f_p)
};
struct MixedRecipe {
    std::vector<FnPtr> eqs;    // c(|x|^2 (f_1^2+...+f_m^2)^2 f_{m+1} ... f_p)
    std::vector<FnPtr> ineqs;
};
using CompositeRecipe = std::variant<SumSquaresPlusNorm, NormTimesProduct, MixedRecipe>;

ComplexityVector composite_complexity(const ComplexityMeasure& measure, const CompositeRecipe& recipe,
                                      std::size_t n);

}  // namespace bettibounds
