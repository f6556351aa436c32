#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "repairlab/core/endomorphism.hpp"
#include "repairlab/core/error.hpp"

namespace repairlab {

/// A finite set of endomorphisms, deduplicated by key and iterated in ascending key order.
/// Nothing here forces well-definedness; see is_well_defined().
class Transformation {
public:
    Transformation() = default;
    explicit Transformation(std::vector<Endomorphism> members);
    Transformation(std::initializer_list<Endomorphism> members);

    std::span<const Endomorphism> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    /// Inclusion by key set.
    bool is_subset_of(const Transformation& other) const;

    /// "{k1, k2}".
    std::string to_string() const;

    friend bool operator==(const Transformation&, const Transformation&) = default;
    friend auto operator<=>(const Transformation& a, const Transformation& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.members_ <=> b.members_;
    }

private:
    std::vector<Endomorphism> members_;
};

/// Every pair of distinct members commutes. Commutation is decided by disjoint footprints.
bool is_well_defined(const Transformation& t);

/// Some member of `stored` is a subset (proper or equal) of `t`.
bool is_subsumed(const Transformation& t, std::span<const Transformation> stored);

/// Composite application of all members. `s` is not modified.
template <Structure S>
S apply_transformation(const Transformation& t, const S& s) {
    if (!is_well_defined(t))
        throw IllDefinedTransformation("transformation " + t.to_string() +
                                       " has members with overlapping footprints");
    S out = s;
    for (const auto& e : t) e.apply_in_place(out);
    return out;
}

}  // namespace repairlab
