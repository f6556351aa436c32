#include "repairlab/layout/spec.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "repairlab/core/error.hpp"

namespace repairlab::layout {

std::string_view to_string(Attribute a) noexcept {
    switch (a) {
        case Attribute::left: return "left";
        case Attribute::right: return "right";
        case Attribute::top: return "top";
        case Attribute::bottom: return "bottom";
        case Attribute::width: return "width";
        case Attribute::height: return "height";
    }
    return "left";
}

std::optional<Attribute> parse_attribute(std::string_view word) noexcept {
    for (auto a : {Attribute::left, Attribute::right, Attribute::top, Attribute::bottom, Attribute::width,
                   Attribute::height})
        if (to_string(a) == word) return a;
    return std::nullopt;
}

int attribute_value(const Box& box, Attribute a) noexcept {
    switch (a) {
        case Attribute::left: return box.left;
        case Attribute::right: return box.right();
        case Attribute::top: return box.top;
        case Attribute::bottom: return box.bottom();
        case Attribute::width: return box.width;
        case Attribute::height: return box.height;
    }
    return 0;
}

std::string ValueTerm::to_string() const {
    if (is_constant()) return std::to_string(constant);
    return "$" + *variable + "'s " + std::string(layout::to_string(attribute));
}

std::string_view to_string(LayoutOp op) noexcept {
    switch (op) {
        case LayoutOp::equals: return "equals";
        case LayoutOp::greater_than: return "greater than";
        case LayoutOp::less_than: return "less than";
    }
    return "equals";
}

bool compare(LayoutOp op, int lhs, int rhs) noexcept {
    switch (op) {
        case LayoutOp::equals: return lhs == rhs;
        case LayoutOp::greater_than: return lhs > rhs;
        case LayoutOp::less_than: return lhs < rhs;
    }
    return false;
}

LayoutSpec LayoutSpec::compare(LayoutOp op, ValueTerm lhs, ValueTerm rhs) {
    Node n;
    n.kind = Kind::compare;
    n.op = op;
    n.lhs = std::move(lhs);
    n.rhs = std::move(rhs);
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

LayoutSpec LayoutSpec::negation(LayoutSpec operand) {
    Node n;
    n.kind = Kind::negation;
    n.children.push_back(std::move(operand));
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

LayoutSpec LayoutSpec::conjunction(LayoutSpec lhs, LayoutSpec rhs) {
    Node n;
    n.kind = Kind::conjunction;
    n.children = {std::move(lhs), std::move(rhs)};
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

LayoutSpec LayoutSpec::disjunction(LayoutSpec lhs, LayoutSpec rhs) {
    Node n;
    n.kind = Kind::disjunction;
    n.children = {std::move(lhs), std::move(rhs)};
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

LayoutSpec LayoutSpec::implication(LayoutSpec antecedent, LayoutSpec consequent) {
    Node n;
    n.kind = Kind::implication;
    n.children = {std::move(antecedent), std::move(consequent)};
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

LayoutSpec LayoutSpec::for_each(std::string variable, Selector selector, LayoutSpec body) {
    Node n;
    n.kind = Kind::for_each;
    n.variable = std::move(variable);
    n.selector = std::move(selector);
    n.children.push_back(std::move(body));
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

LayoutSpec LayoutSpec::there_exists(std::string variable, Selector selector, LayoutSpec body) {
    Node n;
    n.kind = Kind::there_exists;
    n.variable = std::move(variable);
    n.selector = std::move(selector);
    n.children.push_back(std::move(body));
    return LayoutSpec(std::make_shared<const Node>(std::move(n)));
}

std::vector<Selector> LayoutSpec::selectors() const {
    std::vector<Selector> out;
    std::set<std::string> seen;
    auto walk = [&](const LayoutSpec& s, auto&& self) -> void {
        if (s.kind() == Kind::for_each || s.kind() == Kind::there_exists) {
            if (seen.insert(s.selector().to_string()).second) out.push_back(s.selector());
        }
        for (const auto& c : s.node_->children) self(c, self);
    };
    walk(*this, walk);
    return out;
}

std::vector<int> LayoutSpec::constants() const {
    std::vector<int> out;
    auto walk = [&](const LayoutSpec& s, auto&& self) -> void {
        if (s.kind() == Kind::compare) {
            if (s.lhs_term().is_constant()) out.push_back(s.lhs_term().constant);
            if (s.rhs_term().is_constant()) out.push_back(s.rhs_term().constant);
        }
        for (const auto& c : s.node_->children) self(c, self);
    };
    walk(*this, walk);
    return out;
}

std::string LayoutSpec::to_string() const {
    switch (kind()) {
        case Kind::compare:
            return lhs_term().to_string() + " " + std::string(layout::to_string(op())) + " " + rhs_term().to_string();
        case Kind::negation: return "Not (" + body().to_string() + ")";
        case Kind::conjunction: return "(" + lhs().to_string() + ") And (" + rhs().to_string() + ")";
        case Kind::disjunction: return "(" + lhs().to_string() + ") Or (" + rhs().to_string() + ")";
        case Kind::implication: return "If (" + lhs().to_string() + ") Then (" + rhs().to_string() + ")";
        case Kind::for_each:
            return "For each $" + variable() + " in $(" + selector().to_string() + ") (" + body().to_string() + ")";
        case Kind::there_exists:
            return "There exists $" + variable() + " in $(" + selector().to_string() + ") such that (" +
                   body().to_string() + ")";
    }
    return {};
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    LayoutSpec parse() {
        std::optional<LayoutSpec> all;
        skip_space();
        if (pos_ == text_.size()) fail("empty specification");
        while (pos_ < text_.size()) {
            LayoutSpec s = formula();
            expect(".");
            all = all ? LayoutSpec::conjunction(std::move(*all), std::move(s)) : std::move(s);
            skip_space();
        }
        return *all;
    }

private:
    LayoutSpec formula() {
        if (accept_word("If")) {
            LayoutSpec antecedent = disjunction();
            if (!accept_word("Then")) fail("expected 'Then'");
            return LayoutSpec::implication(std::move(antecedent), formula());
        }
        return disjunction();
    }

    LayoutSpec disjunction() {
        LayoutSpec f = conjunction();
        while (accept_word("Or")) f = LayoutSpec::disjunction(std::move(f), conjunction());
        return f;
    }

    LayoutSpec conjunction() {
        LayoutSpec f = unary();
        while (accept_word("And")) f = LayoutSpec::conjunction(std::move(f), unary());
        return f;
    }

    LayoutSpec unary() {
        if (accept_word("Not")) return LayoutSpec::negation(unary());
        if (accept("(")) {
            LayoutSpec f = formula();
            expect(")");
            return f;
        }
        if (accept_word("For")) {
            if (!accept_word("each")) fail("expected 'each'");
            return quantifier(true);
        }
        if (accept_word("There")) {
            if (!accept_word("exists")) fail("expected 'exists'");
            return quantifier(false);
        }
        return comparison();
    }

    LayoutSpec quantifier(bool universal) {
        std::string var = variable_name();
        if (!accept_word("in")) fail("expected 'in'");
        Selector sel = selector();
        if (!universal) {
            if (!accept_word("such") || !accept_word("that")) fail("expected 'such that'");
        }
        scope_.push_back(var);
        LayoutSpec body = unary();
        scope_.pop_back();
        return universal ? LayoutSpec::for_each(std::move(var), std::move(sel), std::move(body))
                         : LayoutSpec::there_exists(std::move(var), std::move(sel), std::move(body));
    }

    Selector selector() {
        expect("$(");
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
        if (pos_ == text_.size()) fail("unterminated selector");
        std::string_view raw = text_.substr(start, pos_ - start);
        try {
            Selector s = parse_selector(raw);
            ++pos_;
            return s;
        } catch (const ParseError& e) {
            pos_ = start + e.column() - 1;
            fail("in selector: " + e.reason());
        }
    }

    LayoutSpec comparison() {
        ValueTerm lhs = term();
        LayoutOp op;
        accept_word("is");
        if (accept_word("equals")) {
            op = LayoutOp::equals;
        } else if (accept_word("greater")) {
            if (!accept_word("than")) fail("expected 'than'");
            op = LayoutOp::greater_than;
        } else if (accept_word("less")) {
            if (!accept_word("than")) fail("expected 'than'");
            op = LayoutOp::less_than;
        } else {
            fail("expected 'equals', 'greater than' or 'less than'");
        }
        ValueTerm rhs = term();
        return LayoutSpec::compare(op, std::move(lhs), std::move(rhs));
    }

    ValueTerm term() {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '$') {
            std::size_t at = pos_;
            std::string var = variable_name();
            if (std::find(scope_.begin(), scope_.end(), var) == scope_.end()) {
                pos_ = at;
                fail("unbound variable $" + var);
            }
            if (!accept("'s")) fail("expected \"'s\"");
            skip_space();
            std::size_t word_at = pos_;
            std::string attr = word();
            auto a = parse_attribute(attr);
            if (!a) {
                pos_ = word_at;
                fail("unknown attribute '" + attr + "'");
            }
            return ValueTerm::of(std::move(var), *a);
        }
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) {
            pos_ = start;
            fail("expected a value");
        }
        int value = 0;
        try {
            value = std::stoi(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("value out of range");
        }
        accept_word("px");
        return ValueTerm::literal(value);
    }

    std::string variable_name() {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '$') fail("expected a variable");
        ++pos_;
        std::string w = word();
        return w;
    }

    std::string word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected a word");
        return std::string(text_.substr(start, pos_ - start));
    }

    bool accept_word(std::string_view w) {
        skip_space();
        if (text_.size() - pos_ < w.size()) return false;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (std::tolower(static_cast<unsigned char>(text_[pos_ + i])) !=
                std::tolower(static_cast<unsigned char>(w[i])))
                return false;
        std::size_t end = pos_ + w.size();
        if (end < text_.size() && is_word_char(text_[end])) return false;
        pos_ = end;
        return true;
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
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
    std::vector<std::string> scope_;
};

}  // namespace

LayoutSpec parse_spec(std::string_view text) { return SpecParser(text).parse(); }

}  // namespace repairlab::layout
