#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/fol/interpretation.hpp"

namespace repairlab::fol {

/// A name (variable or sort constant, resolved against the signature) or an application.
struct Term {
    enum class Kind { symbol, apply };

    Kind kind = Kind::symbol;
    std::string name;
    std::vector<Term> args;

    static Term symbol(std::string name) { return Term{Kind::symbol, std::move(name), {}}; }
    static Term apply(std::string function, std::vector<Term> args) {
        return Term{Kind::apply, std::move(function), std::move(args)};
    }

    std::string to_string() const;
};

enum class CompareOp { eq, ne, lt, le, gt, ge };

std::string_view to_string(CompareOp op) noexcept;

/// First-order formula over typed function symbols with sort-restricted quantifiers.
class Formula {
public:
    enum class Kind {
        constant,
        atom,  // a bool-valued term used as a formula
        compare,
        negation,
        conjunction,
        disjunction,
        implication,
        forall,
        exists,
    };

    static Formula constant(bool value);
    static Formula atom(Term term);
    static Formula compare(CompareOp op, Term lhs, Term rhs);
    static Formula negation(Formula operand);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula forall(std::string variable, std::string sort, Formula body);
    static Formula exists(std::string variable, std::string sort, Formula body);

    Kind kind() const noexcept { return node_->kind; }
    bool value() const noexcept { return node_->value; }
    CompareOp op() const noexcept { return node_->op; }
    const std::vector<Term>& terms() const noexcept { return node_->terms; }
    const std::string& variable() const noexcept { return node_->variable; }
    const std::string& sort() const noexcept { return node_->sort; }
    const Formula& lhs() const { return node_->children.at(0); }
    const Formula& rhs() const { return node_->children.at(1); }
    const Formula& body() const { return node_->children.at(0); }

    /// Text in the instance-file syntax.
    std::string to_string() const;

private:
    struct Node {
        Kind kind = Kind::constant;
        bool value = false;
        CompareOp op = CompareOp::eq;
        std::vector<Term> terms;
        std::string variable;
        std::string sort;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Grammar (loosest first): `->` (right-assoc), `|`, `&`, then `!`, quantifiers
/// `forall x in A ( ... )` / `exists x in A ( ... )` (after `forall x in A:` the body
/// extends as far right as possible),
/// parentheses, `true`/`false`, and `term [op term]` with op in = != < <= > >=.
/// Terms are names, applications `f(t, ...)` and the dot form `t.f`.
Formula parse_formula(std::string_view text);

/// A value for a free variable: the sort it ranges over and the element it denotes.
struct Binding {
    std::string sort;
    std::string element;
};
using Environment = std::map<std::string, Binding>;

/// Formula resolved against a signature: variables become slots, constants become
/// element indices, function names become table indices. Valid for every
/// interpretation sharing that signature, so it can be reused across repair candidates.
/// Evaluation is const and reentrant.
class CompiledFormula {
public:
    /// Throws EvalError on unbound variables, unknown symbols and sort mismatches.
    CompiledFormula(const Formula& phi, const Interpretation& signature,
                    const std::map<std::string, std::string>& free_sorts = {});

    bool eval(const Interpretation& interp) const;
    bool eval(const Interpretation& interp, const Environment& env) const;

    struct Node;
    struct TermNode;

private:
    std::shared_ptr<const Node> root_;
    std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> free_;  // name -> (slot, sort)
    std::size_t slots_ = 0;
};

/// Compiles and evaluates in one go.
bool eval_fol(const Formula& phi, const Interpretation& interp, const Environment& env = {});

}  // namespace repairlab::fol
