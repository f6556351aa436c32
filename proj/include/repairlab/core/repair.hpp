#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "repairlab/core/endomorphism.hpp"
#include "repairlab/core/transformation.hpp"

namespace repairlab {

/// Satisfaction predicate: true when the structure is a model of the expression.
template <class S>
using Spec = std::function<bool(const S&)>;

enum class ExecutionPolicy {
    serial,    // one candidate at a time, in enumeration order
    parallel,  // equal-cardinality candidates checked in OpenMP batches
};

enum class Exhaustion {
    none,             // stream can still yield
    complete,         // every subset of the pool has been visited
    max_cardinality,  // stopped at SearchConfig::max_cardinality
    max_repairs,      // stopped after SearchConfig::max_repairs yields
};

std::string_view to_string(Exhaustion reason) noexcept;

struct SearchConfig {
    std::optional<std::size_t> max_cardinality;
    std::optional<std::size_t> max_repairs;
    /// Returns true for endomorphisms that must be dropped from the pool.
    std::function<bool(const Endomorphism&)> endo_filter;
    ExecutionPolicy policy = ExecutionPolicy::parallel;
    /// Candidates gathered per parallel batch.
    std::size_t batch_size = 4096;
};

namespace detail {

/// Filtered, key-sorted, key-deduplicated pool with its pairwise overlap matrix.
class PreparedPool {
public:
    PreparedPool(std::vector<Endomorphism> pool,
                 const std::function<bool(const Endomorphism&)>& filter);

    std::span<const Endomorphism> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool conflicts(std::uint32_t a, std::uint32_t b) const noexcept {
        return overlap_[static_cast<std::size_t>(a) * members_.size() + b] != 0;
    }
    bool well_defined(std::span<const std::uint32_t> combo) const noexcept;
    Transformation transformation(std::span<const std::uint32_t> combo) const;

private:
    std::vector<Endomorphism> members_;
    std::vector<std::uint8_t> overlap_;
};

/// Visits the subsets of {0..n-1} by increasing cardinality, lexicographically within
/// one cardinality. Nothing is materialized beyond the current combination.
class SubsetCursor {
public:
    SubsetCursor(std::size_t n, std::optional<std::size_t> max_cardinality);

    bool done() const noexcept { return done_; }
    std::size_t cardinality() const noexcept { return current_.size(); }
    std::span<const std::uint32_t> current() const noexcept { return current_; }
    /// Why the cursor stopped; meaningful once done().
    Exhaustion reason() const noexcept { return reason_; }

    /// Moves to the next subset; returns false when the cardinality just changed
    /// or the cursor finished.
    bool advance();
    void finish(Exhaustion reason) noexcept;

private:
    std::size_t n_;
    std::size_t limit_;
    std::vector<std::uint32_t> current_;
    bool done_ = false;
    Exhaustion reason_ = Exhaustion::none;
};

bool contains_all(std::span<const std::uint32_t> superset, std::span<const std::uint32_t> subset);

/// Runs `check(i)` for i in [0, count) across OpenMP threads; hits[i] = 1 where it holds.
void parallel_check(std::size_t count, const std::function<bool(std::size_t)>& check,
                    std::vector<std::uint8_t>& hits);

}  // namespace detail

/// Cardinality-ordered prime-repair enumeration. Owns the structure, the expression and
/// the pool for its whole lifetime; single owner, not shareable between threads.
template <Structure S>
class RepairStream {
public:
    RepairStream(S sigma, Spec<S> phi, std::vector<Endomorphism> pool, SearchConfig config = {})
        : sigma_(std::move(sigma)),
          phi_(std::move(phi)),
          config_(std::move(config)),
          pool_(std::move(pool), config_.endo_filter),
          cursor_(pool_.size(), config_.max_cardinality) {}

    /// Next prime repair, or nullopt once exhausted (see exhaustion()).
    std::optional<Transformation> next();

    Exhaustion exhaustion() const noexcept { return reason_; }
    std::span<const Endomorphism> pool() const noexcept { return pool_.members(); }
    /// Repairs yielded so far (an antichain).
    std::span<const Transformation> stored() const noexcept { return stored_; }
    std::size_t candidates_checked() const noexcept { return checked_; }

private:
    bool subsumed(std::span<const std::uint32_t> combo) const {
        for (const auto& r : stored_idx_)
            if (detail::contains_all(combo, r)) return true;
        return false;
    }

    bool repairs(std::span<const std::uint32_t> combo) const {
        S out = sigma_;
        for (auto i : combo) pool_.members()[i].apply_in_place(out);
        return phi_(out);
    }

    bool accept(std::span<const std::uint32_t> combo) const {
        return pool_.well_defined(combo) && !subsumed(combo) && repairs(combo);
    }

    Transformation yield(std::vector<std::uint32_t> combo);
    void fill_serial();
    void fill_parallel();

    S sigma_;
    Spec<S> phi_;
    SearchConfig config_;
    detail::PreparedPool pool_;
    detail::SubsetCursor cursor_;
    std::deque<std::vector<std::uint32_t>> pending_;
    std::vector<std::vector<std::uint32_t>> stored_idx_;
    std::vector<Transformation> stored_;
    std::size_t checked_ = 0;
    Exhaustion reason_ = Exhaustion::none;
};

template <Structure S>
std::optional<Transformation> RepairStream<S>::next() {
    if (reason_ != Exhaustion::none) return std::nullopt;
    if (config_.max_repairs && stored_.size() >= *config_.max_repairs) {
        reason_ = Exhaustion::max_repairs;
        return std::nullopt;
    }
    if (pending_.empty()) {
        if (config_.policy == ExecutionPolicy::parallel)
            fill_parallel();
        else
            fill_serial();
    }
    if (pending_.empty()) {
        reason_ = cursor_.reason();
        return std::nullopt;
    }
    auto combo = std::move(pending_.front());
    pending_.pop_front();
    return yield(std::move(combo));
}

template <Structure S>
Transformation RepairStream<S>::yield(std::vector<std::uint32_t> combo) {
    // The empty repair subsumes every other subset.
    if (combo.empty()) cursor_.finish(Exhaustion::complete);
    auto t = pool_.transformation(combo);
    stored_idx_.push_back(std::move(combo));
    stored_.push_back(t);
    return t;
}

template <Structure S>
void RepairStream<S>::fill_serial() {
    while (!cursor_.done()) {
        auto combo = cursor_.current();
        ++checked_;
        bool hit = accept(combo);
        std::vector<std::uint32_t> found;
        if (hit) found.assign(combo.begin(), combo.end());
        cursor_.advance();
        if (hit) {
            pending_.push_back(std::move(found));
            return;
        }
    }
}

template <Structure S>
void RepairStream<S>::fill_parallel() {
    // Batches never straddle a cardinality boundary: candidates of equal size cannot
    // subsume each other, so a batch checked against the current store is exact.
    while (!cursor_.done() && pending_.empty()) {
        const std::size_t k = cursor_.cardinality();
        std::vector<std::uint32_t> packed;
        std::size_t count = 0;
        const std::size_t batch = std::max<std::size_t>(1, config_.batch_size);
        while (!cursor_.done() && count < batch) {
            auto combo = cursor_.current();
            packed.insert(packed.end(), combo.begin(), combo.end());
            ++count;
            if (!cursor_.advance()) break;
        }
        std::vector<std::uint8_t> hits;
        detail::parallel_check(
            count,
            [&](std::size_t i) {
                return accept(std::span<const std::uint32_t>(packed.data() + i * k, k));
            },
            hits);
        checked_ += count;
        for (std::size_t i = 0; i < count; ++i)
            if (hits[i])
                pending_.emplace_back(packed.begin() + static_cast<std::ptrdiff_t>(i * k),
                                      packed.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    }
}

template <Structure S>
std::optional<Transformation> next_prime_repair(RepairStream<S>& state) {
    return state.next();
}

struct EnumerationResult {
    std::vector<Transformation> repairs;
    Exhaustion reason = Exhaustion::complete;
    std::size_t pool_size = 0;
    std::size_t candidates_checked = 0;
};

/// Drains a RepairStream. Output is an antichain in (cardinality, key sequence) order.
template <Structure S>
EnumerationResult enumerate_prime_repairs(const Spec<S>& phi, const S& sigma,
                                          std::vector<Endomorphism> pool,
                                          SearchConfig config = {}) {
    RepairStream<S> stream(sigma, phi, std::move(pool), std::move(config));
    EnumerationResult result;
    result.pool_size = stream.pool().size();
    while (auto t = stream.next()) result.repairs.push_back(std::move(*t));
    result.reason = stream.exhaustion();
    result.candidates_checked = stream.candidates_checked();
    return result;
}

inline constexpr std::size_t kOraclePoolLimit = 20;

/// Brute force over all 2^|pool| subsets: keeps well-defined repairs, then reduces them
/// to the inclusion-minimal ones. Throws PoolTooLarge above kOraclePoolLimit.
/// Result is sorted by (cardinality, key sequence).
template <Structure S>
std::vector<Transformation> oracle_prime_repairs(const Spec<S>& phi, const S& sigma,
                                                 std::vector<Endomorphism> pool) {
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    if (pool.size() > kOraclePoolLimit) throw PoolTooLarge(pool.size(), kOraclePoolLimit);

    const std::uint32_t n = static_cast<std::uint32_t>(pool.size());
    std::vector<std::uint32_t> repair_masks;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Endomorphism> members;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(pool[i]);
        Transformation t(std::move(members));
        if (!is_well_defined(t)) continue;
        if (phi(apply_transformation(t, sigma))) repair_masks.push_back(mask);
    }

    std::stable_sort(repair_masks.begin(), repair_masks.end(), [](auto a, auto b) {
        return std::popcount(a) < std::popcount(b);
    });
    std::vector<std::uint32_t> minimal;
    for (auto m : repair_masks) {
        bool has_smaller = std::any_of(minimal.begin(), minimal.end(), [m](auto r) {
            return (r & m) == r && r != m;
        });
        if (!has_smaller) minimal.push_back(m);
    }

    std::vector<Transformation> out;
    for (auto m : minimal) {
        std::vector<Endomorphism> members;
        for (std::uint32_t i = 0; i < n; ++i)
            if (m & (1u << i)) members.push_back(pool[i]);
        out.emplace_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace repairlab
