#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/core/endomorphism.hpp"

namespace repairlab::fol {

/// Finite set of named atoms. When `ordered` is set, the listed order is a total order
/// usable by <, <=, >, >=.
struct Sort {
    std::string name;
    std::vector<std::string> elements;
    bool ordered = false;

    std::optional<std::uint32_t> index_of(std::string_view element) const;
    std::size_t size() const noexcept { return elements.size(); }

    friend bool operator==(const Sort&, const Sort&) = default;
};

/// Total table (A_1 × ... × A_n) → B. Rows are stored row-major by argument index.
struct FunctionTable {
    std::string name;
    std::vector<std::uint32_t> arg_sorts;
    std::uint32_t image_sort = 0;
    std::vector<std::int32_t> values;

    std::size_t arity() const noexcept { return arg_sorts.size(); }

    friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

inline constexpr std::uint32_t kBoolSort = 0;
inline constexpr std::int32_t kFalse = 0;
inline constexpr std::int32_t kTrue = 1;

/// A finite-domain signature instance: sorts plus one total table per function symbol.
/// Sort 0 is always the built-in `bool` sort {F, T}; predicates are functions into it.
/// Cells are addressed as Cell{function index, row offset}.
class Interpretation {
public:
    Interpretation();

    std::uint32_t add_sort(Sort sort);
    /// New table initialised to the first image element (F for predicates).
    std::uint32_t add_function(std::string name, const std::vector<std::string>& arg_sorts,
                               const std::string& image_sort);

    std::span<const Sort> sorts() const noexcept { return sorts_; }
    std::span<const FunctionTable> functions() const noexcept { return functions_; }
    const Sort& sort(std::uint32_t i) const { return sorts_.at(i); }
    const FunctionTable& function(std::uint32_t i) const { return functions_.at(i); }
    std::optional<std::uint32_t> find_sort(std::string_view name) const;
    std::optional<std::uint32_t> find_function(std::string_view name) const;
    std::uint32_t sort_index(std::string_view name) const;
    std::uint32_t function_index(std::string_view name) const;

    /// Row offset of an argument tuple given as element indices.
    std::uint32_t offset(std::uint32_t function, std::span<const std::int32_t> args) const;
    /// Element indices of a row offset.
    std::vector<std::int32_t> row(std::uint32_t function, std::uint32_t offset) const;
    std::size_t rows(std::uint32_t function) const { return functions_.at(function).values.size(); }

    /// Name-based access; throws EvalError on unknown names.
    void set(std::string_view function, const std::vector<std::string>& args, std::string_view value);
    std::string get(std::string_view function, const std::vector<std::string>& args) const;
    bool holds(std::string_view predicate, const std::vector<std::string>& args) const;

    Cell cell(std::string_view function, const std::vector<std::string>& args) const;
    CellWrite cell_write(std::string_view function, const std::vector<std::string>& args,
                         std::string_view value) const;

    void write(const Cell& c, std::int32_t value) { functions_.at(c.table).values.at(c.offset) = value; }
    std::int32_t read(const Cell& c) const { return functions_.at(c.table).values.at(c.offset); }
    std::string value_label(const Cell& c) const;

    friend bool operator==(const Interpretation&, const Interpretation&) = default;

private:
    std::vector<std::int32_t> element_indices(const FunctionTable& f,
                                              const std::vector<std::string>& args) const;

    std::vector<Sort> sorts_;
    std::vector<FunctionTable> functions_;
};

}  // namespace repairlab::fol
