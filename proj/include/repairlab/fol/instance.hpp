#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/fol/formula.hpp"
#include "repairlab/fol/interpretation.hpp"

namespace repairlab::fol {

/// Names the symbols that the colour and edge pools operate on.
struct GraphSignature {
    std::string vertices;
    std::string adjacency;
    std::vector<std::string> colours;
};

struct FolInstance {
    Interpretation interpretation;
    Formula formula = Formula::constant(true);
    std::optional<GraphSignature> graph;
};

/// Parses the instance document:
///
///     {"sorts": {"A": ["0", "1"]},
///      "functions": [{"name": "p", "args": ["A", "A"], "image": "bool",
///                     "table": [["0", "1", true]]}],
///      "formula": "forall x in A (exists y in A (p(x, y)))"}
///
/// A sort may also be given as {"elements": [...], "ordered": true}. Rows missing from a
/// predicate table default to F; rows missing from any other table are an error.
/// The optional "graph" object names vertex sort, adjacency and colour predicates.
/// Throws SchemaError (with a JSON path) or ParseError.
FolInstance parse_fol_instance(std::string_view json_text);

/// The instance document for an interpretation (all rows listed) and a formula.
std::string fol_instance_to_json(const Interpretation& interp, const Formula& formula);

}  // namespace repairlab::fol
