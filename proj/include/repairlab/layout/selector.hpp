#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/layout/snapshot.hpp"

namespace repairlab::layout {

/// One compound such as `li.foo`, `#menu`, `*` or `div#main.a.b`.
struct SimpleSelector {
    std::optional<std::string> tag;  // nullopt matches any tag
    std::optional<std::string> id;
    std::vector<std::string> classes;

    bool matches(const Element& e) const;
    std::string to_string() const;

    friend bool operator==(const SimpleSelector&, const SimpleSelector&) = default;
};

enum class Combinator { descendant, child };

/// Compounds joined by descendant (whitespace) or child (`>`) combinators, left to right.
/// Attribute selectors, pseudo-classes and sibling combinators are not supported.
struct Selector {
    std::vector<SimpleSelector> compounds;
    std::vector<Combinator> combinators;  // compounds.size() - 1 entries

    std::string to_string() const;

    friend bool operator==(const Selector&, const Selector&) = default;
};

/// Throws ParseError (column within `text`) on syntax errors and unsupported constructs.
Selector parse_selector(std::string_view text);

/// Indices of matching elements in document order.
std::vector<std::size_t> select(const DomSnapshot& t, const Selector& s);

}  // namespace repairlab::layout
