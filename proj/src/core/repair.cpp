#include "repairlab/core/repair.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace repairlab {

std::string_view to_string(Exhaustion reason) noexcept {
    switch (reason) {
        case Exhaustion::none: return "none";
        case Exhaustion::complete: return "complete";
        case Exhaustion::max_cardinality: return "max_cardinality";
        case Exhaustion::max_repairs: return "max_repairs";
    }
    return "none";
}

namespace detail {

PreparedPool::PreparedPool(std::vector<Endomorphism> pool,
                           const std::function<bool(const Endomorphism&)>& filter) {
    if (filter) std::erase_if(pool, filter);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    members_ = std::move(pool);

    const std::size_t n = members_.size();
    overlap_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (members_[i].overlaps(members_[j])) overlap_[i * n + j] = overlap_[j * n + i] = 1;
}

bool PreparedPool::well_defined(std::span<const std::uint32_t> combo) const noexcept {
    for (std::size_t i = 0; i < combo.size(); ++i)
        for (std::size_t j = i + 1; j < combo.size(); ++j)
            if (conflicts(combo[i], combo[j])) return false;
    return true;
}

Transformation PreparedPool::transformation(std::span<const std::uint32_t> combo) const {
    std::vector<Endomorphism> members;
    members.reserve(combo.size());
    for (auto i : combo) members.push_back(members_[i]);
    return Transformation(std::move(members));
}

SubsetCursor::SubsetCursor(std::size_t n, std::optional<std::size_t> max_cardinality)
    : n_(n), limit_(max_cardinality ? std::min(*max_cardinality, n) : n) {}

void SubsetCursor::finish(Exhaustion reason) noexcept {
    done_ = true;
    reason_ = reason;
    current_.clear();
}

bool SubsetCursor::advance() {
    if (done_) return false;
    const std::size_t k = current_.size();
    // Rightmost position that can still move up.
    for (std::size_t pos = k; pos-- > 0;) {
        if (current_[pos] < n_ - k + pos) {
            ++current_[pos];
            for (std::size_t q = pos + 1; q < k; ++q) current_[q] = current_[q - 1] + 1;
            return true;
        }
    }
    if (k + 1 > limit_) {
        finish(limit_ < n_ ? Exhaustion::max_cardinality : Exhaustion::complete);
        return false;
    }
    current_.resize(k + 1);
    for (std::size_t q = 0; q <= k; ++q) current_[q] = static_cast<std::uint32_t>(q);
    return false;
}

bool contains_all(std::span<const std::uint32_t> superset, std::span<const std::uint32_t> subset) {
    return std::includes(superset.begin(), superset.end(), subset.begin(), subset.end());
}

void parallel_check(std::size_t count, const std::function<bool(std::size_t)>& check,
                    std::vector<std::uint8_t>& hits) {
    hits.assign(count, 0);
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        hits[static_cast<std::size_t>(i)] = check(static_cast<std::size_t>(i)) ? 1 : 0;
}

}  // namespace detail
}  // namespace repairlab
