#include "bettibounds/rules.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace bettibounds {

namespace {

enum class Kind { Lit, ArgA, ArgB, ArgE, ArgD, DimN, Add, Sub, Mul, Div, Pow, Max2, Min2, AggProd, AggSum, AggMax, AggMin };

using Context = RuleExpr::Context;

}  // namespace

struct RuleExpr::Node {
    Kind kind;
    Nat literal;
    std::size_t index = 0;  // entry index for ArgA/ArgB/ArgE
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const RuleExpr::Node>;

struct Env {
    const ComplexityVector* a = nullptr;
    const ComplexityVector* b = nullptr;
    const std::vector<ComplexityVector>* args = nullptr;
    const ComplexityVector* current = nullptr;  // bound inside an aggregate
    const Nat* d = nullptr;
    Nat n = 0;
};

Nat eval(const RuleExpr::Node& node, const Env& env) {
    switch (node.kind) {
        case Kind::Lit: return node.literal;
        case Kind::ArgA:
            if (!env.a) throw std::invalid_argument("rule: a-variables not available here");
            return (*env.a)[node.index];
        case Kind::ArgB:
            if (!env.b) throw std::invalid_argument("rule: b-variables not available here");
            return (*env.b)[node.index];
        case Kind::ArgE:
            if (!env.current) throw std::invalid_argument("rule: e-variables only valid inside aggregates");
            return (*env.current)[node.index];
        case Kind::ArgD:
            if (!env.d) throw std::invalid_argument("rule: d only available in poly rules");
            return *env.d;
        case Kind::DimN:
            if (!env.args) throw std::invalid_argument("rule: n only available in solution rules");
            return env.n;
        case Kind::Add: return eval(*node.lhs, env) + eval(*node.rhs, env);
        case Kind::Sub: return monus(eval(*node.lhs, env), eval(*node.rhs, env));
        case Kind::Mul: return eval(*node.lhs, env) * eval(*node.rhs, env);
        case Kind::Div: {
            const Nat d = eval(*node.rhs, env);
            if (d == 0) throw std::domain_error("rule: division by zero");
            return eval(*node.lhs, env) / d;
        }
        case Kind::Pow: return nat_pow(eval(*node.lhs, env), eval(*node.rhs, env));
        case Kind::Max2: return nat_max(eval(*node.lhs, env), eval(*node.rhs, env));
        case Kind::Min2: return nat_min(eval(*node.lhs, env), eval(*node.rhs, env));
        case Kind::AggProd:
        case Kind::AggSum:
        case Kind::AggMax:
        case Kind::AggMin: {
            if (!env.args) throw std::invalid_argument("rule: aggregates only valid in solution rules");
            bool first = true;
            Nat acc = node.kind == Kind::AggProd ? 1 : 0;
            for (const auto& vec : *env.args) {
                Env inner = env;
                inner.current = &vec;
                const Nat v = eval(*node.lhs, inner);
                switch (node.kind) {
                    case Kind::AggProd: acc *= v; break;
                    case Kind::AggSum: acc += v; break;
                    case Kind::AggMax: acc = first ? v : nat_max(acc, v); break;
                    case Kind::AggMin: acc = first ? v : nat_min(acc, v); break;
                    default: break;
                }
                first = false;
            }
            return acc;
        }
    }
    throw std::logic_error("rule: unreachable");
}

class Parser {
public:
    Parser(const std::string& text, std::size_t arity, Context context)
        : text_(text), arity_(arity), context_(context) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            if (accept('+')) lhs = binary(Kind::Add, lhs, term());
            else if (accept('-')) lhs = binary(Kind::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = power();
        for (;;) {
            skip_ws();
            if (accept('*')) lhs = binary(Kind::Mul, lhs, power());
            else if (accept('/')) lhs = binary(Kind::Div, lhs, power());
            else return lhs;
        }
    }

    NodePtr power() {
        NodePtr base = atom();
        skip_ws();
        if (accept('^')) return binary(Kind::Pow, base, power());
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            auto node = std::make_shared<RuleExpr::Node>();
            node->kind = Kind::Lit;
            node->literal = Nat(text_.substr(start, pos_ - start));
            return node;
        }
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return ident(text_.substr(start, pos_ - start));
        }
        fail("expected expression");
        return nullptr;
    }

    NodePtr ident(const std::string& name) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            std::vector<NodePtr> args;
            args.push_back(expr());
            skip_ws();
            while (accept(',')) args.push_back(expr());
            expect(')');
            if ((name == "max" || name == "min") && args.size() == 2) {
                return binary(name == "max" ? Kind::Max2 : Kind::Min2, args[0], args[1]);
            }
            if (args.size() == 1 &&
                (name == "prod" || name == "sum" || name == "max" || name == "min")) {
                if (context_ != Context::Solution) fail("aggregate '" + name + "' only valid in solution rules");
                auto node = std::make_shared<RuleExpr::Node>();
                node->kind = name == "prod"  ? Kind::AggProd
                             : name == "sum" ? Kind::AggSum
                             : name == "max" ? Kind::AggMax
                                             : Kind::AggMin;
                node->lhs = args[0];
                return node;
            }
            fail("unknown function '" + name + "' with " + std::to_string(args.size()) + " argument(s)");
        }
        if (name == "n") {
            if (context_ != Context::Solution) fail("'n' only valid in solution rules");
            auto node = std::make_shared<RuleExpr::Node>();
            node->kind = Kind::DimN;
            return node;
        }
        if (name == "d") {
            if (context_ != Context::Degree) fail("'d' only valid in poly rules");
            auto node = std::make_shared<RuleExpr::Node>();
            node->kind = Kind::ArgD;
            return node;
        }
        if (name.size() >= 2 && (name[0] == 'a' || name[0] == 'b' || name[0] == 'e')) {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
            if (digits) {
                const unsigned long idx = std::stoul(name.substr(1));
                if (idx < 1 || idx > arity_) fail("variable '" + name + "' out of range for arity " + std::to_string(arity_));
                const bool want_e = context_ == Context::Solution;
                if (name[0] == 'e' && !want_e) fail("e-variables only valid in solution rules");
                if (name[0] != 'e' && want_e) fail("solution rules use e-variables, not '" + name + "'");
                if (context_ == Context::Degree) fail("poly rules only use 'd', not '" + name + "'");
                if (name[0] == 'b' && context_ != Context::Binary) fail("b-variables only valid in binary rules");
                auto node = std::make_shared<RuleExpr::Node>();
                node->kind = name[0] == 'a' ? Kind::ArgA : name[0] == 'b' ? Kind::ArgB : Kind::ArgE;
                node->index = idx - 1;
                return node;
            }
        }
        fail("unknown identifier '" + name + "'");
        return nullptr;
    }

    NodePtr binary(Kind kind, NodePtr lhs, NodePtr rhs) {
        auto node = std::make_shared<RuleExpr::Node>();
        node->kind = kind;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("rule expression error at offset " + std::to_string(pos_) + ": " +
                                    msg + " in \"" + text_ + "\"");
    }

    const std::string& text_;
    std::size_t arity_;
    Context context_;
    std::size_t pos_ = 0;
};

}  // namespace

RuleExpr RuleExpr::parse(const std::string& text, std::size_t arity, Context context) {
    return RuleExpr(Parser(text, arity, context).parse());
}

Nat RuleExpr::eval_binary(const ComplexityVector& a, const ComplexityVector& b) const {
    Env env;
    env.a = &a;
    env.b = &b;
    return eval(*root_, env);
}

Nat RuleExpr::eval_unary(const ComplexityVector& a) const {
    Env env;
    env.a = &a;
    return eval(*root_, env);
}

Nat RuleExpr::eval_solution(std::size_t n, const std::vector<ComplexityVector>& cs) const {
    Env env;
    env.args = &cs;
    env.n = n;
    return eval(*root_, env);
}

Nat RuleExpr::eval_degree(const Nat& d) const {
    Env env;
    env.d = &d;
    return eval(*root_, env);
}

namespace {

std::map<std::string, std::string> read_measure_section(std::istream& in, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::string line;
    bool in_section = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string trimmed = line.substr(b, e - b + 1);
        if (trimmed == "[measure]") {
            in_section = true;
            continue;
        }
        if (!in_section)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected [measure] header");
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trimmed.substr(0, trimmed.find_last_not_of(" \t", eq - 1) + 1);
        std::string value = trimmed.substr(trimmed.find_first_not_of(" \t", eq + 1));
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument(origin + ": duplicate key '" + key + "'");
    }
    if (!in_section) throw std::invalid_argument(origin + ": missing [measure] section");
    return kv;
}

}  // namespace

MeasurePtr load_measure_file(std::istream& in, const std::string& origin) {
    auto kv = read_measure_section(in, origin);
    auto take = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument(origin + ": missing required key '" + key + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    const std::string name = take("name");
    const unsigned long arity = std::stoul(take("arity"));
    if (arity == 0) throw std::invalid_argument(origin + ": arity must be positive");

    std::vector<Nat> norm_entries;
    {
        std::istringstream ns(take("norm_sq"));
        std::string tok;
        while (ns >> tok) norm_entries.emplace_back(tok);
        if (norm_entries.size() != arity)
            throw std::invalid_argument(origin + ": norm_sq needs exactly " + std::to_string(arity) + " entries");
    }

    auto parse_family = [&](const char* family, RuleExpr::Context context) {
        std::vector<RuleExpr> rules;
        for (unsigned long i = 1; i <= arity; ++i)
            rules.push_back(
                RuleExpr::parse(take(std::string(family) + "." + std::to_string(i)), arity, context));
        return rules;
    };
    const auto plus_rules = parse_family("plus", RuleExpr::Context::Binary);
    const auto times_rules = parse_family("times", RuleExpr::Context::Binary);
    const auto partial_rules = parse_family("partial", RuleExpr::Context::Unary);
    const RuleExpr solution_rule = RuleExpr::parse(take("solution"), arity, RuleExpr::Context::Solution);

    std::vector<RuleExpr> poly_rules;
    if (kv.count("poly.1")) poly_rules = parse_family("poly", RuleExpr::Context::Degree);

    if (!kv.empty()) throw std::invalid_argument(origin + ": unknown key '" + kv.begin()->first + "'");

    auto eval_binary_family = [arity](const std::vector<RuleExpr>& rules, const ComplexityVector& a,
                                      const ComplexityVector& b) {
        std::vector<Nat> out;
        out.reserve(arity);
        for (const auto& rule : rules) out.push_back(rule.eval_binary(a, b));
        return ComplexityVector(std::move(out));
    };

    return std::make_shared<ComplexityMeasure>(
        name, arity,
        [plus_rules, eval_binary_family](const ComplexityVector& a, const ComplexityVector& b) {
            return eval_binary_family(plus_rules, a, b);
        },
        [times_rules, eval_binary_family](const ComplexityVector& a, const ComplexityVector& b) {
            return eval_binary_family(times_rules, a, b);
        },
        [partial_rules, arity](const ComplexityVector& a) {
            std::vector<Nat> out;
            out.reserve(arity);
            for (const auto& rule : partial_rules) out.push_back(rule.eval_unary(a));
            return ComplexityVector(std::move(out));
        },
        [solution_rule](std::size_t n, const std::vector<ComplexityVector>& cs) {
            return solution_rule.eval_solution(n, cs);
        },
        ComplexityVector(std::move(norm_entries)),
        poly_rules.empty() ? ComplexityMeasure::DegreeRule(nullptr)
                           : ComplexityMeasure::DegreeRule([poly_rules, arity](const Nat& d) {
                                 std::vector<Nat> out;
                                 out.reserve(arity);
                                 for (const auto& rule : poly_rules) out.push_back(rule.eval_degree(d));
                                 return ComplexityVector(std::move(out));
                             }));
}

MeasurePtr load_measure_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open measure file: " + path);
    return load_measure_file(in, path);
}

}  // namespace bettibounds
