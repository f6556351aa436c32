#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repairlab::layout {

/// Three-valued truth: ⊤, ⊥ and ? (inconclusive).
enum class Truth { top, bottom, unknown };

std::string_view to_string(Truth t) noexcept;

/// A tree of element references (indices into a DomSnapshot).
struct WitnessNode {
    std::size_t element = 0;
    std::vector<WitnessNode> children;

    friend bool operator==(const WitnessNode&, const WitnessNode&) = default;
};

/// A witness is a forest; the empty forest is the empty witness.
using Witness = std::vector<WitnessNode>;

/// Root element for attaching a sub-witness; nullopt is the empty element v_∅, whose
/// sub-witness trees are attached directly instead of under a root.
using Anchor = std::optional<std::size_t>;

struct Verdict {
    Truth value = Truth::top;
    Witness truth_witness;
    Witness falsehood_witness;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// w ∪ {(n, sub)}.
void attach(Witness& w, Anchor n, const Witness& sub);

/// Verdict conjunction ⊗(v, n, v'):
///   b' = ⊥            → ⟨⊥, w⊤, w⊥ ∪ {(n, w'⊥)}⟩
///   b ≠ ⊥ and b' = ?  → ⟨?, w⊤ ∪ {(n, w'⊤)}, w⊥⟩
///   b ≠ ⊥ and b' = ⊤  → ⟨b, w⊤ ∪ {(n, w'⊤)}, w⊥⟩
///   otherwise         → v
Verdict verdict_and(Verdict v, Anchor n, const Verdict& other);

/// Verdict disjunction ⊕: ⊗ with the roles of ⊤ and ⊥ (values and witnesses) exchanged.
Verdict verdict_or(Verdict v, Anchor n, const Verdict& other);

/// Verdict negation ⊖: flips ⊤/⊥ (? stays ?) and exchanges the two witnesses, each
/// re-rooted at n.
Verdict verdict_not(const Verdict& v, Anchor n);

}  // namespace repairlab::layout
