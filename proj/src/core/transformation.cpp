#include "repairlab/core/transformation.hpp"

#include <algorithm>

namespace repairlab {

Transformation::Transformation(std::vector<Endomorphism> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Transformation::Transformation(std::initializer_list<Endomorphism> members)
    : Transformation(std::vector<Endomorphism>(members)) {}

bool Transformation::is_subset_of(const Transformation& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

std::string Transformation::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ", ";
        out += members_[i].key();
    }
    return out + "}";
}

bool is_well_defined(const Transformation& t) {
    auto m = t.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m[i].overlaps(m[j])) return false;
    return true;
}

bool is_subsumed(const Transformation& t, std::span<const Transformation> stored) {
    return std::any_of(stored.begin(), stored.end(),
                       [&](const Transformation& r) { return r.is_subset_of(t); });
}

}  // namespace repairlab
