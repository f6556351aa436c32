#pragma once

#include <string>

#include "repairlab/layout/snapshot.hpp"
#include "repairlab/layout/spec.hpp"
#include "repairlab/layout/verdict.hpp"

namespace repairlab::layout {

/// Verdict of a closed assertion on a snapshot, with truth and falsehood witnesses.
///
/// Ground comparisons yield their element operands as leaf witnesses; Not, And, Or and
/// If-Then combine sub-verdicts through ⊖, ⊗ and ⊕ anchored at v_∅; quantifiers fold
/// ⊗ (For each, seeded ⟨⊤,∅,∅⟩) or ⊕ (There exists, seeded ⟨⊥,∅,∅⟩) over the selected
/// elements, anchoring each step at the element bound to the variable.
Verdict omega(const DomSnapshot& t, const LayoutSpec& phi);

/// Plain two-valued evaluation, without witnesses.
bool holds(const DomSnapshot& t, const LayoutSpec& phi);

/// Witness forest as JSON: `[{"elem": "0.1", "children": [...]}, ...]`.
std::string witness_to_json(const DomSnapshot& t, const Witness& w);
/// Indented element-id tree, one node per line.
std::string witness_to_text(const DomSnapshot& t, const Witness& w, int indent = 0);

}  // namespace repairlab::layout
