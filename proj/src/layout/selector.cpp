#include "repairlab/layout/selector.hpp"

#include <algorithm>
#include <cctype>

#include "repairlab/core/error.hpp"

namespace repairlab::layout {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'; }

}  // namespace

bool SimpleSelector::matches(const Element& e) const {
    if (tag && lower(*tag) != lower(e.tag)) return false;
    if (id && (!e.id || *e.id != *id)) return false;
    return std::all_of(classes.begin(), classes.end(), [&](const std::string& c) { return e.has_class(c); });
}

std::string SimpleSelector::to_string() const {
    std::string out;
    if (tag) out += *tag;
    if (id) out += "#" + *id;
    for (const auto& c : classes) out += "." + c;
    return out.empty() ? "*" : out;
}

std::string Selector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < compounds.size(); ++i) {
        if (i) out += combinators[i - 1] == Combinator::child ? " > " : " ";
        out += compounds[i].to_string();
    }
    return out;
}

Selector parse_selector(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> void { throw ParseError(what, 1, pos + 1); };
    auto skip_space = [&] {
        bool any = false;
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            any = true;
        }
        return any;
    };
    auto ident = [&]() {
        std::size_t start = pos;
        while (pos < text.size() && is_ident_char(text[pos])) ++pos;
        if (start == pos) fail("identifier expected");
        return std::string(text.substr(start, pos - start));
    };

    Selector s;
    skip_space();
    if (pos == text.size()) fail("empty selector");
    while (true) {
        SimpleSelector c;
        bool any = false;
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            any = true;
        } else if (pos < text.size() && is_ident_char(text[pos])) {
            c.tag = ident();
            any = true;
        }
        while (pos < text.size() && (text[pos] == '#' || text[pos] == '.')) {
            char kind = text[pos++];
            if (kind == '#') {
                if (c.id) fail("compound has two ids");
                c.id = ident();
            } else {
                c.classes.push_back(ident());
            }
            any = true;
        }
        if (pos < text.size() && (text[pos] == '[' || text[pos] == ':'))
            fail(std::string("unsupported selector syntax '") + text[pos] + "'");
        if (!any) fail("selector expected");
        s.compounds.push_back(std::move(c));

        bool space = skip_space();
        if (pos == text.size()) break;
        char ch = text[pos];
        if (ch == '>') {
            ++pos;
            skip_space();
            s.combinators.push_back(Combinator::child);
        } else if (ch == '+' || ch == '~' || ch == ',') {
            fail(std::string("unknown combinator '") + ch + "'");
        } else if (space) {
            s.combinators.push_back(Combinator::descendant);
        } else {
            fail(std::string("unexpected '") + ch + "'");
        }
        if (pos == text.size()) fail("selector expected after combinator");
    }
    return s;
}

namespace {

bool match_from(const DomSnapshot& t, const Selector& s, std::size_t element, std::size_t compound) {
    if (!s.compounds[compound].matches(t.element(element))) return false;
    if (compound == 0) return true;
    auto parent = t.element(element).parent;
    if (s.combinators[compound - 1] == Combinator::child)
        return parent && match_from(t, s, *parent, compound - 1);
    for (; parent; parent = t.element(*parent).parent)
        if (match_from(t, s, *parent, compound - 1)) return true;
    return false;
}

}  // namespace

std::vector<std::size_t> select(const DomSnapshot& t, const Selector& s) {
    std::vector<std::size_t> out;
    if (s.compounds.empty()) return out;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (match_from(t, s, i, s.compounds.size() - 1)) out.push_back(i);
    return out;
}

}  // namespace repairlab::layout
