#include "repairlab/fol/interpretation.hpp"

#include <algorithm>
#include <set>

#include "repairlab/core/error.hpp"

namespace repairlab::fol {

std::optional<std::uint32_t> Sort::index_of(std::string_view element) const {
    auto it = std::find(elements.begin(), elements.end(), element);
    if (it == elements.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - elements.begin());
}

Interpretation::Interpretation() { sorts_.push_back(Sort{"bool", {"F", "T"}, false}); }

std::uint32_t Interpretation::add_sort(Sort sort) {
    if (find_sort(sort.name)) throw SchemaError("sorts." + sort.name, "duplicate sort");
    std::set<std::string> seen(sort.elements.begin(), sort.elements.end());
    if (seen.size() != sort.elements.size())
        throw SchemaError("sorts." + sort.name, "duplicate element");
    sorts_.push_back(std::move(sort));
    return static_cast<std::uint32_t>(sorts_.size() - 1);
}

std::uint32_t Interpretation::add_function(std::string name, const std::vector<std::string>& arg_sorts,
                                           const std::string& image_sort) {
    if (find_function(name)) throw SchemaError("functions." + name, "duplicate function");
    FunctionTable f;
    f.name = std::move(name);
    std::size_t rows = 1;
    for (const auto& s : arg_sorts) {
        auto idx = find_sort(s);
        if (!idx) throw SchemaError("functions." + f.name, "unknown sort '" + s + "'");
        f.arg_sorts.push_back(*idx);
        rows *= sorts_[*idx].size();
    }
    auto image = find_sort(image_sort);
    if (!image) throw SchemaError("functions." + f.name, "unknown image sort '" + image_sort + "'");
    f.image_sort = *image;
    if (rows > 0 && sorts_[*image].size() == 0)
        throw SchemaError("functions." + f.name, "empty image sort cannot hold a total table");
    f.values.assign(rows, 0);
    functions_.push_back(std::move(f));
    return static_cast<std::uint32_t>(functions_.size() - 1);
}

std::optional<std::uint32_t> Interpretation::find_sort(std::string_view name) const {
    for (std::size_t i = 0; i < sorts_.size(); ++i)
        if (sorts_[i].name == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::optional<std::uint32_t> Interpretation::find_function(std::string_view name) const {
    for (std::size_t i = 0; i < functions_.size(); ++i)
        if (functions_[i].name == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::uint32_t Interpretation::sort_index(std::string_view name) const {
    if (auto i = find_sort(name)) return *i;
    throw EvalError("unknown sort '" + std::string(name) + "'");
}

std::uint32_t Interpretation::function_index(std::string_view name) const {
    if (auto i = find_function(name)) return *i;
    throw EvalError("unknown function '" + std::string(name) + "'");
}

std::uint32_t Interpretation::offset(std::uint32_t function, std::span<const std::int32_t> args) const {
    const auto& f = functions_.at(function);
    std::uint32_t off = 0;
    for (std::size_t i = 0; i < f.arg_sorts.size(); ++i)
        off = off * static_cast<std::uint32_t>(sorts_[f.arg_sorts[i]].size()) +
              static_cast<std::uint32_t>(args[i]);
    return off;
}

std::vector<std::int32_t> Interpretation::row(std::uint32_t function, std::uint32_t offset) const {
    const auto& f = functions_.at(function);
    std::vector<std::int32_t> args(f.arg_sorts.size());
    for (std::size_t i = f.arg_sorts.size(); i-- > 0;) {
        auto n = static_cast<std::uint32_t>(sorts_[f.arg_sorts[i]].size());
        args[i] = static_cast<std::int32_t>(offset % n);
        offset /= n;
    }
    return args;
}

std::vector<std::int32_t> Interpretation::element_indices(const FunctionTable& f,
                                                          const std::vector<std::string>& args) const {
    if (args.size() != f.arity())
        throw EvalError(f.name + " expects " + std::to_string(f.arity()) + " arguments, got " +
                        std::to_string(args.size()));
    std::vector<std::int32_t> idx;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& sort = sorts_[f.arg_sorts[i]];
        auto e = sort.index_of(args[i]);
        if (!e) throw EvalError("'" + args[i] + "' is not an element of sort " + sort.name);
        idx.push_back(static_cast<std::int32_t>(*e));
    }
    return idx;
}

Cell Interpretation::cell(std::string_view function, const std::vector<std::string>& args) const {
    auto fi = function_index(function);
    auto idx = element_indices(functions_[fi], args);
    return Cell{fi, offset(fi, idx)};
}

CellWrite Interpretation::cell_write(std::string_view function, const std::vector<std::string>& args,
                                     std::string_view value) const {
    CellWrite w;
    w.cell = cell(function, args);
    const auto& image = sorts_[functions_[w.cell.table].image_sort];
    auto v = image.index_of(value);
    if (!v) throw EvalError("'" + std::string(value) + "' is not an element of sort " + image.name);
    w.value = static_cast<std::int32_t>(*v);
    w.function = std::string(function);
    w.args = args;
    w.value_label = std::string(value);
    return w;
}

void Interpretation::set(std::string_view function, const std::vector<std::string>& args,
                         std::string_view value) {
    auto w = cell_write(function, args, value);
    write(w.cell, w.value);
}

std::string Interpretation::get(std::string_view function, const std::vector<std::string>& args) const {
    return value_label(cell(function, args));
}

bool Interpretation::holds(std::string_view predicate, const std::vector<std::string>& args) const {
    auto c = cell(predicate, args);
    if (functions_[c.table].image_sort != kBoolSort)
        throw EvalError(std::string(predicate) + " is not a predicate");
    return read(c) == kTrue;
}

std::string Interpretation::value_label(const Cell& c) const {
    const auto& f = functions_.at(c.table);
    return sorts_[f.image_sort].elements.at(static_cast<std::size_t>(f.values.at(c.offset)));
}

}  // namespace repairlab::fol
