#include "repairlab/fol/formula.hpp"

#include <cctype>
#include <optional>

#include "repairlab/core/error.hpp"

namespace repairlab::fol {

std::string Term::to_string() const {
    if (kind == Kind::symbol) return name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].to_string();
    }
    return out + ")";
}

std::string_view to_string(CompareOp op) noexcept {
    switch (op) {
        case CompareOp::eq: return "=";
        case CompareOp::ne: return "!=";
        case CompareOp::lt: return "<";
        case CompareOp::le: return "<=";
        case CompareOp::gt: return ">";
        case CompareOp::ge: return ">=";
    }
    return "=";
}

Formula Formula::constant(bool value) {
    Node n;
    n.kind = Kind::constant;
    n.value = value;
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::atom(Term term) {
    Node n;
    n.kind = Kind::atom;
    n.terms.push_back(std::move(term));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::compare(CompareOp op, Term lhs, Term rhs) {
    Node n;
    n.kind = Kind::compare;
    n.op = op;
    n.terms = {std::move(lhs), std::move(rhs)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula operand) {
    Node n;
    n.kind = Kind::negation;
    n.children.push_back(std::move(operand));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    Node n;
    n.kind = Kind::conjunction;
    n.children = {std::move(lhs), std::move(rhs)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    Node n;
    n.kind = Kind::disjunction;
    n.children = {std::move(lhs), std::move(rhs)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    Node n;
    n.kind = Kind::implication;
    n.children = {std::move(lhs), std::move(rhs)};
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::forall(std::string variable, std::string sort, Formula body) {
    Node n;
    n.kind = Kind::forall;
    n.variable = std::move(variable);
    n.sort = std::move(sort);
    n.children.push_back(std::move(body));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::exists(std::string variable, std::string sort, Formula body) {
    Node n;
    n.kind = Kind::exists;
    n.variable = std::move(variable);
    n.sort = std::move(sort);
    n.children.push_back(std::move(body));
    return Formula(std::make_shared<const Node>(std::move(n)));
}

std::string Formula::to_string() const {
    switch (kind()) {
        case Kind::constant: return value() ? "true" : "false";
        case Kind::atom: return terms()[0].to_string();
        case Kind::compare:
            return terms()[0].to_string() + " " + std::string(fol::to_string(op())) + " " +
                   terms()[1].to_string();
        case Kind::negation: return "!(" + body().to_string() + ")";
        case Kind::conjunction: return "(" + lhs().to_string() + " & " + rhs().to_string() + ")";
        case Kind::disjunction: return "(" + lhs().to_string() + " | " + rhs().to_string() + ")";
        case Kind::implication: return "(" + lhs().to_string() + " -> " + rhs().to_string() + ")";
        case Kind::forall: return "forall " + variable() + " in " + sort() + " (" + body().to_string() + ")";
        case Kind::exists: return "exists " + variable() + " in " + sort() + " (" + body().to_string() + ")";
    }
    return {};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = implication();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    Formula implication() {
        Formula lhs = disjunction();
        if (accept("->")) return Formula::implication(std::move(lhs), implication());
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept("|")) f = Formula::disjunction(std::move(f), conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (accept("&")) f = Formula::conjunction(std::move(f), unary());
        return f;
    }

    Formula unary() {
        skip_space();
        if (peek("!=")) fail("unexpected '!='");
        if (accept("!")) return Formula::negation(unary());
        if (accept("(")) {
            Formula f = implication();
            expect(")");
            return f;
        }
        if (accept_keyword("forall")) return quantifier(true);
        if (accept_keyword("exists")) return quantifier(false);
        if (accept_keyword("true")) return Formula::constant(true);
        if (accept_keyword("false")) return Formula::constant(false);

        Term lhs = term();
        if (auto op = comparison()) return Formula::compare(*op, std::move(lhs), term());
        return Formula::atom(std::move(lhs));
    }

    Formula quantifier(bool universal) {
        std::string var = name("variable");
        if (!accept_keyword("in")) fail("expected 'in'");
        std::string sort = name("sort");
        // `forall x in A: ...` scopes over the rest of the formula, as in written logic;
        // without the colon the body is the next unary formula, normally parenthesized.
        Formula body = accept(":") ? implication() : unary();
        return universal ? Formula::forall(std::move(var), std::move(sort), std::move(body))
                         : Formula::exists(std::move(var), std::move(sort), std::move(body));
    }

    std::optional<CompareOp> comparison() {
        skip_space();
        // Longest tokens first; "->" is not a comparison.
        if (accept("!=")) return CompareOp::ne;
        if (accept("<=")) return CompareOp::le;
        if (accept(">=")) return CompareOp::ge;
        if (accept("=")) return CompareOp::eq;
        if (accept("<")) return CompareOp::lt;
        if (peek("->")) return std::nullopt;
        if (accept(">")) return CompareOp::gt;
        return std::nullopt;
    }

    Term term() {
        std::string head = name("term");
        Term t = Term::symbol(head);
        if (accept("(")) {
            std::vector<Term> args;
            if (!accept(")")) {
                do {
                    args.push_back(term());
                } while (accept(","));
                expect(")");
            }
            t = Term::apply(std::move(head), std::move(args));
        }
        while (accept(".")) {
            std::string f = name("function name");
            t = Term::apply(std::move(f), {std::move(t)});
        }
        return t;
    }

    std::string name(const char* what) {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
            ++pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) {
            pos_ = start;
            fail(std::string(what) + " expected");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    bool peek(std::string_view token) {
        skip_space();
        return text_.substr(pos_, token.size()) == token;
    }

    bool accept(std::string_view token) {
        if (!peek(token)) return false;
        pos_ += token.size();
        return true;
    }

    bool accept_keyword(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word) return false;
        std::size_t end = pos_ + word.size();
        if (end < text_.size() && is_name_char(text_[end])) return false;
        pos_ = end;
        return true;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(what, line, column);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Compilation

struct CompiledFormula::TermNode {
    enum class Kind { variable, constant, apply };
    Kind kind = Kind::constant;
    std::int32_t value = 0;  // slot for variables, element index for constants
    std::uint32_t function = 0;
    std::uint32_t sort = 0;
    std::vector<TermNode> args;
};

struct CompiledFormula::Node {
    Formula::Kind kind = Formula::Kind::constant;
    bool value = false;
    CompareOp op = CompareOp::eq;
    TermNode lhs;
    TermNode rhs;
    std::uint32_t slot = 0;
    std::uint32_t sort = 0;
    std::vector<Node> children;
};

namespace {

struct Scoped {
    std::string name;
    std::uint32_t slot;
    std::uint32_t sort;
};

class Compiler {
public:
    Compiler(const Interpretation& sig, std::vector<Scoped> scope, std::size_t slots)
        : sig_(sig), scope_(std::move(scope)), slots_(slots) {}

    CompiledFormula::Node formula(const Formula& f) {
        using K = Formula::Kind;
        CompiledFormula::Node n;
        n.kind = f.kind();
        switch (f.kind()) {
            case K::constant:
                n.value = f.value();
                break;
            case K::atom:
                n.lhs = term(f.terms()[0], kBoolSort);
                if (n.lhs.sort != kBoolSort)
                    throw EvalError("sort mismatch: '" + f.terms()[0].to_string() +
                                    "' is not a truth value");
                break;
            case K::compare:
                compare(f, n);
                break;
            case K::negation:
                n.children.push_back(formula(f.body()));
                break;
            case K::conjunction:
            case K::disjunction:
            case K::implication:
                n.children.push_back(formula(f.lhs()));
                n.children.push_back(formula(f.rhs()));
                break;
            case K::forall:
            case K::exists: {
                auto sort = sig_.find_sort(f.sort());
                if (!sort) throw EvalError("unknown sort '" + f.sort() + "'");
                n.sort = *sort;
                n.slot = static_cast<std::uint32_t>(slots_++);
                scope_.push_back({f.variable(), n.slot, n.sort});
                n.children.push_back(formula(f.body()));
                scope_.pop_back();
                break;
            }
        }
        return n;
    }

    std::size_t slots() const { return slots_; }

private:
    const Scoped* lookup(const std::string& name) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->name == name) return &*it;
        return nullptr;
    }

    bool is_constant(const Term& t) const {
        return t.kind == Term::Kind::symbol && lookup(t.name) == nullptr;
    }

    void compare(const Formula& f, CompiledFormula::Node& n) {
        const Term& a = f.terms()[0];
        const Term& b = f.terms()[1];
        n.op = f.op();
        if (is_constant(a) && !is_constant(b)) {
            n.rhs = term(b, std::nullopt);
            n.lhs = term(a, n.rhs.sort);
        } else {
            n.lhs = term(a, std::nullopt);
            n.rhs = term(b, n.lhs.sort);
        }
        if (n.lhs.sort != n.rhs.sort)
            throw EvalError("sort mismatch in '" + f.to_string() + "': " + sig_.sort(n.lhs.sort).name +
                            " vs " + sig_.sort(n.rhs.sort).name);
        if (n.op != CompareOp::eq && n.op != CompareOp::ne && !sig_.sort(n.lhs.sort).ordered)
            throw EvalError("sort " + sig_.sort(n.lhs.sort).name + " has no declared order in '" +
                            f.to_string() + "'");
    }

    CompiledFormula::TermNode term(const Term& t, std::optional<std::uint32_t> expected) {
        CompiledFormula::TermNode n;
        if (t.kind == Term::Kind::apply) {
            auto fi = sig_.find_function(t.name);
            if (!fi) throw EvalError("unknown function '" + t.name + "'");
            const auto& fn = sig_.function(*fi);
            if (t.args.size() != fn.arity())
                throw EvalError(t.name + " expects " + std::to_string(fn.arity()) + " arguments, got " +
                                std::to_string(t.args.size()));
            n.kind = CompiledFormula::TermNode::Kind::apply;
            n.function = *fi;
            n.sort = fn.image_sort;
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                auto arg = term(t.args[i], fn.arg_sorts[i]);
                if (arg.sort != fn.arg_sorts[i])
                    throw EvalError("sort mismatch: argument " + std::to_string(i + 1) + " of " + t.name +
                                    " must be " + sig_.sort(fn.arg_sorts[i]).name + ", got " +
                                    sig_.sort(arg.sort).name);
                n.args.push_back(std::move(arg));
            }
            return n;
        }
        if (const auto* v = lookup(t.name)) {
            n.kind = CompiledFormula::TermNode::Kind::variable;
            n.value = static_cast<std::int32_t>(v->slot);
            n.sort = v->sort;
            return n;
        }
        n.kind = CompiledFormula::TermNode::Kind::constant;
        if (expected) {
            auto e = sig_.sort(*expected).index_of(t.name);
            if (!e)
                throw EvalError("unbound variable or unknown constant '" + t.name + "' (expected an element of " +
                                sig_.sort(*expected).name + ")");
            n.sort = *expected;
            n.value = static_cast<std::int32_t>(*e);
            return n;
        }
        std::optional<std::uint32_t> found;
        for (std::uint32_t s = 0; s < sig_.sorts().size(); ++s) {
            if (auto e = sig_.sort(s).index_of(t.name)) {
                if (found) throw EvalError("ambiguous constant '" + t.name + "'");
                found = s;
                n.value = static_cast<std::int32_t>(*e);
            }
        }
        if (!found) throw EvalError("unbound variable or unknown constant '" + t.name + "'");
        n.sort = *found;
        return n;
    }

    const Interpretation& sig_;
    std::vector<Scoped> scope_;
    std::size_t slots_;
};

std::int32_t eval_term(const CompiledFormula::TermNode& t, const Interpretation& interp,
                       const std::vector<std::int32_t>& env) {
    using K = CompiledFormula::TermNode::Kind;
    switch (t.kind) {
        case K::variable: return env[static_cast<std::size_t>(t.value)];
        case K::constant: return t.value;
        case K::apply: {
            const auto& fn = interp.function(t.function);
            std::uint32_t off = 0;
            for (std::size_t i = 0; i < t.args.size(); ++i)
                off = off * static_cast<std::uint32_t>(interp.sort(fn.arg_sorts[i]).size()) +
                      static_cast<std::uint32_t>(eval_term(t.args[i], interp, env));
            return fn.values[off];
        }
    }
    return 0;
}

bool eval_node(const CompiledFormula::Node& n, const Interpretation& interp, std::vector<std::int32_t>& env) {
    using K = Formula::Kind;
    switch (n.kind) {
        case K::constant: return n.value;
        case K::atom: return eval_term(n.lhs, interp, env) == kTrue;
        case K::compare: {
            auto a = eval_term(n.lhs, interp, env);
            auto b = eval_term(n.rhs, interp, env);
            switch (n.op) {
                case CompareOp::eq: return a == b;
                case CompareOp::ne: return a != b;
                case CompareOp::lt: return a < b;
                case CompareOp::le: return a <= b;
                case CompareOp::gt: return a > b;
                case CompareOp::ge: return a >= b;
            }
            return false;
        }
        case K::negation: return !eval_node(n.children[0], interp, env);
        case K::conjunction:
            return eval_node(n.children[0], interp, env) && eval_node(n.children[1], interp, env);
        case K::disjunction:
            return eval_node(n.children[0], interp, env) || eval_node(n.children[1], interp, env);
        case K::implication:
            return !eval_node(n.children[0], interp, env) || eval_node(n.children[1], interp, env);
        case K::forall: {
            const auto size = static_cast<std::int32_t>(interp.sort(n.sort).size());
            for (std::int32_t e = 0; e < size; ++e) {
                env[n.slot] = e;
                if (!eval_node(n.children[0], interp, env)) return false;
            }
            return true;
        }
        case K::exists: {
            const auto size = static_cast<std::int32_t>(interp.sort(n.sort).size());
            for (std::int32_t e = 0; e < size; ++e) {
                env[n.slot] = e;
                if (eval_node(n.children[0], interp, env)) return true;
            }
            return false;
        }
    }
    return false;
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& phi, const Interpretation& signature,
                                 const std::map<std::string, std::string>& free_sorts) {
    std::vector<Scoped> scope;
    for (const auto& [name, sort_name] : free_sorts) {
        auto sort = signature.find_sort(sort_name);
        if (!sort) throw EvalError("unknown sort '" + sort_name + "' for variable " + name);
        auto slot = static_cast<std::uint32_t>(scope.size());
        scope.push_back({name, slot, *sort});
        free_[name] = {slot, *sort};
    }
    Compiler c(signature, std::move(scope), free_sorts.size());
    root_ = std::make_shared<const Node>(c.formula(phi));
    slots_ = c.slots();
}

bool CompiledFormula::eval(const Interpretation& interp) const {
    if (!free_.empty()) throw EvalError("formula has free variables; an environment is required");
    std::vector<std::int32_t> env(slots_, 0);
    return eval_node(*root_, interp, env);
}

bool CompiledFormula::eval(const Interpretation& interp, const Environment& env_in) const {
    std::vector<std::int32_t> env(slots_, 0);
    for (const auto& [name, slot_sort] : free_) {
        auto it = env_in.find(name);
        if (it == env_in.end()) throw EvalError("unbound variable '" + name + "'");
        const auto& sort = interp.sort(slot_sort.second);
        auto e = sort.index_of(it->second.element);
        if (!e) throw EvalError("'" + it->second.element + "' is not an element of sort " + sort.name);
        env[slot_sort.first] = static_cast<std::int32_t>(*e);
    }
    return eval_node(*root_, interp, env);
}

bool eval_fol(const Formula& phi, const Interpretation& interp, const Environment& env) {
    std::map<std::string, std::string> sorts;
    for (const auto& [name, b] : env) sorts[name] = b.sort;
    return CompiledFormula(phi, interp, sorts).eval(interp, env);
}

}  // namespace repairlab::fol
