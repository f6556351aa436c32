#include "json.hpp"
#include "repairlab/core/error.hpp"
#include "repairlab/prop/prop.hpp"

namespace repairlab::prop {

PropInstance parse_prop_instance(std::string_view json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("$", "expected an object");
    auto val = doc.find("valuation");
    if (val == doc.end() || !val->is_object()) throw SchemaError("$.valuation", "expected an object");
    std::map<std::string, bool> assignment;
    for (const auto& [name, value] : val->items()) {
        if (!value.is_boolean()) throw SchemaError("$.valuation." + name, "expected true or false");
        assignment[name] = value.get<bool>();
    }
    auto text = doc.find("formula");
    if (text == doc.end() || !text->is_string()) throw SchemaError("$.formula", "expected a string");

    PropInstance inst{Valuation(assignment), parse_formula(text->get<std::string>())};
    for (const auto& v : inst.formula.variables())
        if (!inst.valuation.contains(v)) throw SchemaError("$.formula", "variable '" + v + "' has no value");
    return inst;
}

}  // namespace repairlab::prop
