#include "repairlab/prop/prop.hpp"

#include <algorithm>
#include <cctype>

#include "repairlab/core/error.hpp"

namespace repairlab::prop {

Formula Formula::constant(bool value) {
    return Formula(std::make_shared<const Node>(Node{Kind::constant, value, {}, {}}));
}

Formula Formula::variable(std::string name) {
    return Formula(std::make_shared<const Node>(Node{Kind::variable, false, std::move(name), {}}));
}

Formula Formula::negation(Formula operand) {
    return Formula(std::make_shared<const Node>(Node{Kind::negation, false, {}, {std::move(operand)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::conjunction, false, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::disjunction, false, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::implication, false, {}, {std::move(lhs), std::move(rhs)}}));
}

std::set<std::string> Formula::variables() const {
    std::set<std::string> out;
    if (kind() == Kind::variable) out.insert(name());
    for (const auto& c : node_->children) out.merge(c.variables());
    return out;
}

std::string Formula::to_string() const {
    switch (kind()) {
        case Kind::constant: return value() ? "true" : "false";
        case Kind::variable: return name();
        case Kind::negation: return "!" + lhs().to_string();
        case Kind::conjunction: return "(" + lhs().to_string() + " & " + rhs().to_string() + ")";
        case Kind::disjunction: return "(" + lhs().to_string() + " | " + rhs().to_string() + ")";
        case Kind::implication: return "(" + lhs().to_string() + " -> " + rhs().to_string() + ")";
    }
    return {};
}

namespace {

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
        if (accept("!")) return Formula::negation(unary());
        if (accept("(")) {
            Formula f = implication();
            if (!accept(")")) fail("expected ')'");
            return f;
        }
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                    : std::string("unexpected end of formula"));
        std::string word(text_.substr(start, pos_ - start));
        if (std::isdigit(static_cast<unsigned char>(word.front()))) {
            pos_ = start;
            fail("identifier expected");
        }
        if (word == "true") return Formula::constant(true);
        if (word == "false") return Formula::constant(false);
        return Formula::variable(std::move(word));
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
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

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

Valuation::Valuation(const std::map<std::string, bool>& assignment) {
    for (const auto& [name, value] : assignment) {
        names_.push_back(name);
        values_.push_back(value ? 1 : 0);
    }
}

bool Valuation::contains(std::string_view name) const {
    return std::binary_search(names_.begin(), names_.end(), name);
}

std::uint32_t Valuation::index_of(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name)
        throw EvalError("unbound variable '" + std::string(name) + "'");
    return static_cast<std::uint32_t>(it - names_.begin());
}

bool Valuation::get(std::string_view name) const { return values_[index_of(name)] != 0; }

void Valuation::set(std::string_view name, bool value) { values_[index_of(name)] = value ? 1 : 0; }

void Valuation::write(const Cell& c, std::int32_t value) { values_.at(c.offset) = value; }

std::int32_t Valuation::read(const Cell& c) const { return values_.at(c.offset); }

std::string Valuation::value_label(const Cell& c) const {
    return std::string(truth_label(read(c) != 0));
}

std::string Valuation::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) out += ", ";
        out += names_[i] + "=" + std::string(truth_label(values_[i] != 0));
    }
    return out + "}";
}

std::string_view truth_label(bool value) noexcept { return value ? "T" : "F"; }

bool eval_prop(const Formula& phi, const Valuation& sigma) {
    using K = Formula::Kind;
    switch (phi.kind()) {
        case K::constant: return phi.value();
        case K::variable: return sigma.get(phi.name());
        case K::negation: return !eval_prop(phi.lhs(), sigma);
        case K::conjunction: return eval_prop(phi.lhs(), sigma) && eval_prop(phi.rhs(), sigma);
        case K::disjunction: return eval_prop(phi.lhs(), sigma) || eval_prop(phi.rhs(), sigma);
        case K::implication: return !eval_prop(phi.lhs(), sigma) || eval_prop(phi.rhs(), sigma);
    }
    return false;
}

Endomorphism var_flip(const Valuation& sigma, std::string_view variable, bool value) {
    CellWrite w;
    w.cell = Cell{0, sigma.index_of(variable)};
    w.value = value ? 1 : 0;
    w.function = std::string(variable);
    w.value_label = std::string(truth_label(value));
    std::string key = w.label();
    return Endomorphism(std::move(key), {std::move(w)});
}

std::vector<Endomorphism> prop_endo_pool(const Valuation& sigma) {
    std::vector<Endomorphism> pool;
    for (const auto& name : sigma.variables()) {
        pool.push_back(var_flip(sigma, name, false));
        pool.push_back(var_flip(sigma, name, true));
    }
    return pool;
}

}  // namespace repairlab::prop
