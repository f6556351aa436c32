#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace repairlab {

/// Address of one writable cell of a structure: a table and a flat offset into it.
/// Valuations use a single table; interpretations use one table per function symbol.
struct Cell {
    std::uint32_t table = 0;
    std::uint32_t offset = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A constant write performed by an endomorphism, plus the names used for reporting.
struct CellWrite {
    Cell cell;
    std::int32_t value = 0;
    std::string function;           // table name, or variable name for valuations
    std::vector<std::string> args;  // argument element names; empty for valuations
    std::string value_label;

    /// "p(2,0)" or "a".
    std::string cell_label() const;
    /// "p(2,0)=T".
    std::string label() const;
};

/// Anything the repair engine can transform: cells are read and written by address.
template <class S>
concept Structure = std::copy_constructible<S> && std::equality_comparable<S> &&
    requires(S s, const S cs, const Cell& c, std::int32_t v) {
        s.write(c, v);
        { cs.read(c) } -> std::convertible_to<std::int32_t>;
        { cs.value_label(c) } -> std::convertible_to<std::string>;
    };

/// A self-map on structures that writes fixed values to a fixed set of cells.
///
/// Endomorphisms are plain values. The key is unique within a pool and gives the
/// total order used for deterministic enumeration. Because every write is a
/// constant, application is idempotent and only touches the footprint.
class Endomorphism {
public:
    Endomorphism() = default;

    /// Writes are sorted by cell. Two writes to the same cell throw IllDefinedTransformation.
    Endomorphism(std::string key, std::vector<CellWrite> writes);

    const std::string& key() const noexcept { return key_; }
    std::span<const CellWrite> writes() const noexcept { return writes_; }
    std::vector<Cell> footprint() const;

    /// True when the footprints share a cell.
    bool overlaps(const Endomorphism& other) const noexcept;

    template <Structure S>
    void apply_in_place(S& s) const {
        for (const auto& w : writes_) s.write(w.cell, w.value);
    }

    template <Structure S>
    S operator()(const S& s) const {
        S out = s;
        apply_in_place(out);
        return out;
    }

    /// Same key; keys are unique labels so this is identity within a pool.
    friend bool operator==(const Endomorphism& a, const Endomorphism& b) noexcept {
        return a.key_ == b.key_;
    }
    friend std::strong_ordering operator<=>(const Endomorphism& a, const Endomorphism& b) noexcept {
        return a.key_ <=> b.key_;
    }

private:
    std::string key_;
    std::vector<CellWrite> writes_;
};

/// A named group of endomorphisms applied atomically. Key is
/// `name{k1,k2,...}` over the sorted member keys; footprints must be disjoint.
Endomorphism make_macro(const std::string& name, std::span<const Endomorphism> members);

/// True when `e` writes, on `s`, only values the cells already hold.
template <Structure S>
bool is_identity_on(const Endomorphism& e, const S& s) {
    for (const auto& w : e.writes())
        if (s.read(w.cell) != w.value) return false;
    return true;
}

}  // namespace repairlab
