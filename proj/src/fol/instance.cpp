#include "repairlab/fol/instance.hpp"

#include <set>

#include "json.hpp"
#include "repairlab/core/error.hpp"

namespace repairlab::fol {

using nlohmann::json;

namespace {

std::string atom_text(const json& v, const std::string& path) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_boolean()) return v.get<bool>() ? "T" : "F";
    throw SchemaError(path, "expected a string or integer element");
}

std::string truth_text(const json& v, const std::string& path) {
    if (v.is_boolean()) return v.get<bool>() ? "T" : "F";
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "T" || s == "true") return "T";
        if (s == "F" || s == "false") return "F";
    }
    throw SchemaError(path, "expected a truth value");
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path, "expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(atom_text(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path, std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace

FolInstance parse_fol_instance(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }

    FolInstance inst;
    auto& interp = inst.interpretation;

    const json& sorts = field(doc, "sorts", "$");
    if (!sorts.is_object()) throw SchemaError("$.sorts", "expected an object");
    for (const auto& [name, spec] : sorts.items()) {
        const std::string path = "$.sorts." + name;
        if (name == "bool") throw SchemaError(path, "'bool' is reserved");
        Sort sort{name, {}, false};
        if (spec.is_array()) {
            sort.elements = string_list(spec, path);
        } else if (spec.is_object()) {
            sort.elements = string_list(field(spec, "elements", path), path + ".elements");
            if (auto o = spec.find("ordered"); o != spec.end()) sort.ordered = o->get<bool>();
        } else {
            throw SchemaError(path, "expected an element list");
        }
        interp.add_sort(std::move(sort));
    }

    const json& functions = field(doc, "functions", "$");
    if (!functions.is_array()) throw SchemaError("$.functions", "expected an array");
    for (std::size_t fi = 0; fi < functions.size(); ++fi) {
        const std::string path = "$.functions[" + std::to_string(fi) + "]";
        const json& f = functions[fi];
        auto name = field(f, "name", path).get<std::string>();
        auto args = string_list(field(f, "args", path), path + ".args");
        std::string image = "bool";
        if (auto it = f.find("image"); it != f.end()) image = it->get<std::string>();
        std::uint32_t idx;
        try {
            idx = interp.add_function(name, args, image);
        } catch (const SchemaError& e) {
            throw SchemaError(path, e.what());
        }
        const bool predicate = interp.function(idx).image_sort == kBoolSort;

        std::set<std::uint32_t> seen;
        const json& table = field(f, "table", path);
        if (!table.is_array()) throw SchemaError(path + ".table", "expected an array");
        for (std::size_t r = 0; r < table.size(); ++r) {
            const std::string rpath = path + ".table[" + std::to_string(r) + "]";
            const json& row = table[r];
            if (!row.is_array() || row.size() != args.size() + 1)
                throw SchemaError(rpath, "expected " + std::to_string(args.size() + 1) + " entries");
            std::vector<std::string> key;
            for (std::size_t a = 0; a < args.size(); ++a)
                key.push_back(atom_text(row[a], rpath + "[" + std::to_string(a) + "]"));
            const std::string vpath = rpath + "[" + std::to_string(args.size()) + "]";
            std::string value = predicate ? truth_text(row[args.size()], vpath) : atom_text(row[args.size()], vpath);
            try {
                auto w = interp.cell_write(name, key, value);
                if (!seen.insert(w.cell.offset).second) throw SchemaError(rpath, "duplicate row");
                interp.write(w.cell, w.value);
            } catch (const EvalError& e) {
                throw SchemaError(rpath, e.what());
            }
        }
        if (!predicate && seen.size() != interp.rows(idx))
            throw SchemaError(path + ".table", "table of " + name + " is not total (" + std::to_string(seen.size()) +
                                                   " of " + std::to_string(interp.rows(idx)) + " rows)");
    }

    inst.formula = parse_formula(field(doc, "formula", "$").get<std::string>());

    if (auto g = doc.find("graph"); g != doc.end()) {
        GraphSignature sig;
        sig.vertices = field(*g, "vertices", "$.graph").get<std::string>();
        sig.adjacency = field(*g, "adjacency", "$.graph").get<std::string>();
        sig.colours = string_list(field(*g, "colours", "$.graph"), "$.graph.colours");
        inst.graph = std::move(sig);
    }
    return inst;
}

std::string fol_instance_to_json(const Interpretation& interp, const Formula& formula) {
    json doc;
    doc["sorts"] = json::object();
    for (std::size_t s = 1; s < interp.sorts().size(); ++s) {
        const auto& sort = interp.sort(static_cast<std::uint32_t>(s));
        if (sort.ordered)
            doc["sorts"][sort.name] = {{"elements", sort.elements}, {"ordered", true}};
        else
            doc["sorts"][sort.name] = sort.elements;
    }
    doc["functions"] = json::array();
    for (std::uint32_t fi = 0; fi < interp.functions().size(); ++fi) {
        const auto& fn = interp.function(fi);
        json f;
        f["name"] = fn.name;
        f["args"] = json::array();
        for (auto s : fn.arg_sorts) f["args"].push_back(interp.sort(s).name);
        f["image"] = interp.sort(fn.image_sort).name;
        f["table"] = json::array();
        for (std::uint32_t off = 0; off < fn.values.size(); ++off) {
            json row = json::array();
            auto idx = interp.row(fi, off);
            for (std::size_t a = 0; a < idx.size(); ++a)
                row.push_back(interp.sort(fn.arg_sorts[a]).elements[static_cast<std::size_t>(idx[a])]);
            if (fn.image_sort == kBoolSort)
                row.push_back(fn.values[off] == kTrue);
            else
                row.push_back(interp.sort(fn.image_sort).elements[static_cast<std::size_t>(fn.values[off])]);
            f["table"].push_back(std::move(row));
        }
        doc["functions"].push_back(std::move(f));
    }
    doc["formula"] = formula.to_string();
    return doc.dump(2);
}

}  // namespace repairlab::fol
