#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/layout/selector.hpp"

namespace repairlab::layout {

enum class Attribute { left, right, top, bottom, width, height };

std::string_view to_string(Attribute a) noexcept;
std::optional<Attribute> parse_attribute(std::string_view word) noexcept;
int attribute_value(const Box& box, Attribute a) noexcept;

/// `$x's left` or an integer constant.
struct ValueTerm {
    std::optional<std::string> variable;  // without the leading '$'
    Attribute attribute = Attribute::left;
    int constant = 0;

    bool is_constant() const noexcept { return !variable.has_value(); }
    std::string to_string() const;

    static ValueTerm of(std::string variable, Attribute a) { return {std::move(variable), a, 0}; }
    static ValueTerm literal(int value) { return {std::nullopt, Attribute::left, value}; }
};

enum class LayoutOp { equals, greater_than, less_than };

std::string_view to_string(LayoutOp op) noexcept;
bool compare(LayoutOp op, int lhs, int rhs) noexcept;

/// Abstract syntax of the layout assertion language.
class LayoutSpec {
public:
    enum class Kind { compare, negation, conjunction, disjunction, implication, for_each, there_exists };

    static LayoutSpec compare(LayoutOp op, ValueTerm lhs, ValueTerm rhs);
    static LayoutSpec negation(LayoutSpec operand);
    static LayoutSpec conjunction(LayoutSpec lhs, LayoutSpec rhs);
    static LayoutSpec disjunction(LayoutSpec lhs, LayoutSpec rhs);
    static LayoutSpec implication(LayoutSpec antecedent, LayoutSpec consequent);
    static LayoutSpec for_each(std::string variable, Selector selector, LayoutSpec body);
    static LayoutSpec there_exists(std::string variable, Selector selector, LayoutSpec body);

    Kind kind() const noexcept { return node_->kind; }
    LayoutOp op() const noexcept { return node_->op; }
    const ValueTerm& lhs_term() const noexcept { return node_->lhs; }
    const ValueTerm& rhs_term() const noexcept { return node_->rhs; }
    const std::string& variable() const noexcept { return node_->variable; }
    const Selector& selector() const noexcept { return node_->selector; }
    const LayoutSpec& lhs() const { return node_->children.at(0); }
    const LayoutSpec& rhs() const { return node_->children.at(1); }
    const LayoutSpec& body() const { return node_->children.at(0); }

    /// Every selector used by a quantifier, in first-use order, deduplicated by text.
    std::vector<Selector> selectors() const;
    /// Integer constants appearing in comparisons.
    std::vector<int> constants() const;

    /// Text in the assertion syntax (without the final '.').
    std::string to_string() const;

private:
    struct Node {
        Kind kind = Kind::compare;
        LayoutOp op = LayoutOp::equals;
        ValueTerm lhs;
        ValueTerm rhs;
        std::string variable;
        Selector selector;
        std::vector<LayoutSpec> children;
    };
    explicit LayoutSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Parses one or more statements, each terminated by '.', and joins them with And.
///
///     For each $x in $(#menu li) (
///       For each $y in $(#menu li) (
///         $x's left equals $y's left
///       )
///     ).
///
/// Also: `There exists $x in $(sel) such that (...)`, `And`, `Or`, `Not`,
/// `If ... Then ...`, and the comparisons `equals`, `greater than`, `less than`
/// (optionally preceded by `is`). Throws ParseError with line and column; using a
/// variable outside its quantifier is an error.
LayoutSpec parse_spec(std::string_view text);

}  // namespace repairlab::layout
