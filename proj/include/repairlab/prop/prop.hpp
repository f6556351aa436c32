#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/core/endomorphism.hpp"

namespace repairlab::prop {

/// Propositional formula over named variables.
class Formula {
public:
    enum class Kind { constant, variable, negation, conjunction, disjunction, implication };

    static Formula constant(bool value);
    static Formula variable(std::string name);
    static Formula negation(Formula operand);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);

    Kind kind() const noexcept { return node_->kind; }
    bool value() const noexcept { return node_->value; }
    const std::string& name() const noexcept { return node_->name; }
    const Formula& lhs() const { return node_->children.at(0); }
    const Formula& rhs() const { return node_->children.at(1); }

    std::set<std::string> variables() const;
    /// Fully parenthesized text, re-parseable by parse_formula().
    std::string to_string() const;

private:
    struct Node {
        Kind kind;
        bool value = false;
        std::string name;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Grammar: `!` binds tightest, then `&`, `|`, and right-associative `->`.
/// Identifiers are [A-Za-z_][A-Za-z0-9_]*; `true`/`false` are constants.
Formula parse_formula(std::string_view text);

/// Total map from a finite variable set to truth values.
class Valuation {
public:
    Valuation() = default;
    explicit Valuation(const std::map<std::string, bool>& assignment);

    std::span<const std::string> variables() const noexcept { return names_; }
    std::size_t size() const noexcept { return names_.size(); }
    bool contains(std::string_view name) const;
    /// Throws EvalError for an unknown variable.
    bool get(std::string_view name) const;
    void set(std::string_view name, bool value);
    std::uint32_t index_of(std::string_view name) const;

    void write(const Cell& c, std::int32_t value);
    std::int32_t read(const Cell& c) const;
    std::string value_label(const Cell& c) const;

    std::string to_string() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    std::vector<std::string> names_;  // sorted
    std::vector<std::int32_t> values_;
};

std::string_view truth_label(bool value) noexcept;

/// Truth-table semantics. Throws EvalError when a variable has no value.
bool eval_prop(const Formula& phi, const Valuation& sigma);

/// The flip τ_{x↦b}: key `x=T` or `x=F`. Throws if x is not a variable of `sigma`.
Endomorphism var_flip(const Valuation& sigma, std::string_view variable, bool value);

/// All 2·|X| flips over the variables of `sigma`.
std::vector<Endomorphism> prop_endo_pool(const Valuation& sigma);

/// A valuation with the formula it is checked against.
struct PropInstance {
    Valuation valuation;
    Formula formula = Formula::constant(true);
};

/// Parses `{"valuation": {"a": true, "b": false}, "formula": "a & b"}`. The variable set is
/// the key set of "valuation"; a formula variable outside it is a SchemaError.
PropInstance parse_prop_instance(std::string_view json_text);

}  // namespace repairlab::prop
