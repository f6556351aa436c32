#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/core/endomorphism.hpp"
#include "repairlab/fol/formula.hpp"
#include "repairlab/fol/interpretation.hpp"
#include "repairlab/layout/snapshot.hpp"
#include "repairlab/layout/spec.hpp"

namespace repairlab::layout {

/// A layout spec and snapshot restated as a finite first-order problem.
///
/// Sorts: `E` holds the elements matched by any selector of the spec (labelled by
/// elem_id), `P` the pixel values, ordered numerically. Functions E → P: left, top,
/// width, height, right, bottom. A quantifier over `$(c)` ranges over E, guarded by the
/// membership predicate `in<i>` of its selector unless that selector matches all of E.
struct LayoutModel {
    fol::Interpretation interpretation;
    fol::Formula formula = fol::Formula::constant(true);
    /// Snapshot index of each element of E, in E's order.
    std::vector<std::size_t> elements;
};

/// Builds the model. P holds every attribute value of E, every constant of the spec and
/// `extra_pixels`, so the result never lacks a value it needs.
LayoutModel to_interpretation(const DomSnapshot& t, const LayoutSpec& phi,
                              std::span<const int> extra_pixels = {});

/// How candidate coordinates are chosen for a pool.
struct ValuePolicy {
    enum class Kind { observed, grid, list };
    Kind kind = Kind::observed;
    int step = 0;             // grid
    std::vector<int> values;  // list

    /// `observed`, `grid:<step>` or `list:<v1,v2,...>`. Throws Error on anything else.
    static ValuePolicy parse(std::string_view text);
};

/// Observed values of `attr` over `elements`, plus grid multiples in [0, extent of the
/// page] or the listed values. Sorted, deduplicated. Throws Error on a non-positive step.
std::vector<int> candidate_values(const DomSnapshot& t, std::span<const std::size_t> elements, Attribute attr,
                                  const ValuePolicy& policy);

enum class Axis { horizontal, vertical };

/// Every pixel value some displacement or resize of `values` could write: the values
/// themselves plus the far edge each one implies for each element.
std::vector<int> implied_pixels(const DomSnapshot& t, std::span<const std::size_t> elements, Axis axis,
                                bool resize, std::span<const int> values);

/// Moves: for each element and value p other than its current left (top), the macro
/// setting left ↦ p and right ↦ p + width (top and bottom for vertical). Key
/// `move-h(<elem_id>)=<p>`.
std::vector<Endomorphism> displacement_pool(const LayoutModel& m, const DomSnapshot& t, Axis axis,
                                            std::span<const int> values);

/// Resizes: width ↦ w and right ↦ left + w (height and bottom for vertical). Key
/// `resize-h(<elem_id>)=<w>`.
std::vector<Endomorphism> resize_pool(const LayoutModel& m, const DomSnapshot& t, Axis axis,
                                      std::span<const int> values);

enum class BoxPool { displace_h, displace_v, resize_h, resize_v };

/// A layout repair problem ready for the engine: the model (whose P already holds every
/// value the pool can write) and the union of the requested pools.
struct LayoutProblem {
    LayoutModel model;
    std::vector<Endomorphism> pool;
};

/// Candidate values per pool come from `policy` over the attribute the pool writes
/// (left, top, width or height), observed on the elements of E.
LayoutProblem build_layout_problem(const DomSnapshot& t, const LayoutSpec& phi, std::span<const BoxPool> pools,
                                   const ValuePolicy& policy);

/// Writes the model's box tables back into a copy of the snapshot.
DomSnapshot apply_model(const DomSnapshot& t, const LayoutModel& m, const fol::Interpretation& repaired);

}  // namespace repairlab::layout
