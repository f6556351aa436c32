#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "repairlab/core/endomorphism.hpp"
#include "repairlab/fol/interpretation.hpp"

namespace repairlab::fol {

/// τ_{f(args)↦value}; key `f(a1,a2)=value`.
Endomorphism point_update(const Interpretation& interp, const std::string& function,
                          const std::vector<std::string>& args, const std::string& value);

/// One point update per (function, argument tuple, image value). With a filter, only the
/// named functions contribute.
std::vector<Endomorphism> fol_endo_pool(const Interpretation& interp,
                                        const std::optional<std::set<std::string>>& functions = std::nullopt);

/// Named group of point updates applied atomically. Throws IllDefinedTransformation on
/// overlapping footprints. An empty group is the identity.
Endomorphism macro_endo(const std::string& name, std::span<const Endomorphism> updates);

/// Colour changes: for every vertex x and colour predicate q_i, the macro setting q_i(x)
/// and clearing every other colour predicate at x. Key prefix `colour(x,q_i)`.
std::vector<Endomorphism> colour_change_pool(const Interpretation& interp, const std::string& vertex_sort,
                                             const std::vector<std::string>& colour_predicates);

/// Edge changes: for every unordered pair {x, y} and b in {F, T}, the macro writing b to
/// both p(x,y) and p(y,x); diagonal pairs give a single write. Key prefix `edge(x,y)=b`.
std::vector<Endomorphism> edge_change_pool(const Interpretation& interp, const std::string& vertex_sort,
                                           const std::string& adjacency);

}  // namespace repairlab::fol
