#include "repairlab/fol/pools.hpp"

#include "repairlab/core/error.hpp"

namespace repairlab::fol {

Endomorphism point_update(const Interpretation& interp, const std::string& function,
                          const std::vector<std::string>& args, const std::string& value) {
    auto w = interp.cell_write(function, args, value);
    std::string key = w.label();
    return Endomorphism(std::move(key), {std::move(w)});
}

std::vector<Endomorphism> fol_endo_pool(const Interpretation& interp,
                                        const std::optional<std::set<std::string>>& functions) {
    std::vector<Endomorphism> pool;
    for (std::uint32_t fi = 0; fi < interp.functions().size(); ++fi) {
        const auto& fn = interp.function(fi);
        if (functions && !functions->contains(fn.name)) continue;
        const auto& image = interp.sort(fn.image_sort);
        for (std::uint32_t off = 0; off < fn.values.size(); ++off) {
            std::vector<std::string> args;
            auto row = interp.row(fi, off);
            for (std::size_t i = 0; i < row.size(); ++i)
                args.push_back(interp.sort(fn.arg_sorts[i]).elements[static_cast<std::size_t>(row[i])]);
            for (const auto& value : image.elements) pool.push_back(point_update(interp, fn.name, args, value));
        }
    }
    return pool;
}

Endomorphism macro_endo(const std::string& name, std::span<const Endomorphism> updates) {
    return make_macro(name, updates);
}

namespace {

const Sort& vertex_sort_of(const Interpretation& interp, const std::string& name) {
    auto s = interp.find_sort(name);
    if (!s) throw EvalError("unknown sort '" + name + "'");
    return interp.sort(*s);
}

void require_signature(const Interpretation& interp, const std::string& function, std::size_t arity,
                       const std::string& vertex_sort) {
    const auto& fn = interp.function(interp.function_index(function));
    auto vs = interp.sort_index(vertex_sort);
    if (fn.image_sort != kBoolSort || fn.arity() != arity)
        throw EvalError(function + " must be a predicate of arity " + std::to_string(arity));
    for (auto s : fn.arg_sorts)
        if (s != vs) throw EvalError(function + " must range over sort " + vertex_sort);
}

}  // namespace

std::vector<Endomorphism> colour_change_pool(const Interpretation& interp, const std::string& vertex_sort,
                                             const std::vector<std::string>& colour_predicates) {
    for (const auto& q : colour_predicates) require_signature(interp, q, 1, vertex_sort);
    std::vector<Endomorphism> pool;
    for (const auto& x : vertex_sort_of(interp, vertex_sort).elements) {
        for (const auto& chosen : colour_predicates) {
            std::vector<Endomorphism> updates;
            for (const auto& q : colour_predicates)
                updates.push_back(point_update(interp, q, {x}, q == chosen ? "T" : "F"));
            pool.push_back(macro_endo("colour(" + x + "," + chosen + ")", updates));
        }
    }
    return pool;
}

std::vector<Endomorphism> edge_change_pool(const Interpretation& interp, const std::string& vertex_sort,
                                           const std::string& adjacency) {
    require_signature(interp, adjacency, 2, vertex_sort);
    const auto& vertices = vertex_sort_of(interp, vertex_sort).elements;
    std::vector<Endomorphism> pool;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i; j < vertices.size(); ++j) {
            const auto& x = vertices[i];
            const auto& y = vertices[j];
            for (const char* b : {"F", "T"}) {
                std::vector<Endomorphism> updates{point_update(interp, adjacency, {x, y}, b)};
                if (i != j) updates.push_back(point_update(interp, adjacency, {y, x}, b));
                pool.push_back(macro_endo("edge(" + x + "," + y + ")=" + b, updates));
            }
        }
    }
    return pool;
}

}  // namespace repairlab::fol
