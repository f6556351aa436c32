#include "repairlab/report/report.hpp"

#include <cstdint>
#include <cstdio>

#include "json.hpp"
#include "repairlab/core/error.hpp"

namespace repairlab::report {

using nlohmann::json;

namespace {

std::string cell(const ValueChange& c) {
    if (c.args.empty()) return c.function;
    std::string out = c.function + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) out += (i ? "," : "") + c.args[i];
    return out + ")";
}

template <class T>
T field(const json& j, const char* name, const std::string& path) {
    if (!j.is_object() || !j.contains(name)) throw SchemaError(path, std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw SchemaError(path + "." + name, "wrong type");
    }
}

}  // namespace

std::string digest(const std::vector<std::string_view>& parts) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 0x100000001b3ULL;
    };
    for (auto p : parts) {
        for (char c : p) mix(static_cast<unsigned char>(c));
        mix(0);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_json(const RepairReport& r) {
    json repairs = json::array();
    for (const auto& entry : r.repairs) {
        json endos = json::array();
        for (const auto& e : entry.endomorphisms) {
            json changes = json::array();
            for (const auto& c : e.changes)
                changes.push_back({{"function", c.function}, {"args", c.args}, {"old", c.old_value}, {"new", c.new_value}});
            endos.push_back({{"key", e.key}, {"changes", changes}});
        }
        repairs.push_back({{"cardinality", entry.cardinality}, {"endomorphisms", endos}});
    }
    json out = {{"digest", r.digest},       {"kind", r.kind},           {"pool_size", r.pool_size},
                {"repairs", repairs},       {"exhausted", r.exhausted}, {"reason", r.reason}};
    return out.dump(2) + "\n";
}

RepairReport report_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", e.what());
    }
    RepairReport r;
    r.digest = field<std::string>(j, "digest", "$");
    r.kind = field<std::string>(j, "kind", "$");
    r.pool_size = field<std::size_t>(j, "pool_size", "$");
    r.exhausted = field<bool>(j, "exhausted", "$");
    r.reason = field<std::string>(j, "reason", "$");
    const auto repairs = field<json>(j, "repairs", "$");
    if (!repairs.is_array()) throw SchemaError("$.repairs", "expected an array");
    for (std::size_t i = 0; i < repairs.size(); ++i) {
        const std::string path = "$.repairs[" + std::to_string(i) + "]";
        RepairEntry entry;
        entry.cardinality = field<std::size_t>(repairs[i], "cardinality", path);
        const auto endos = field<json>(repairs[i], "endomorphisms", path);
        if (!endos.is_array()) throw SchemaError(path + ".endomorphisms", "expected an array");
        for (std::size_t k = 0; k < endos.size(); ++k) {
            const std::string epath = path + ".endomorphisms[" + std::to_string(k) + "]";
            EndoChange e;
            e.key = field<std::string>(endos[k], "key", epath);
            const auto changes = field<json>(endos[k], "changes", epath);
            if (!changes.is_array()) throw SchemaError(epath + ".changes", "expected an array");
            for (std::size_t c = 0; c < changes.size(); ++c) {
                const std::string cpath = epath + ".changes[" + std::to_string(c) + "]";
                e.changes.push_back({field<std::string>(changes[c], "function", cpath),
                                     field<std::vector<std::string>>(changes[c], "args", cpath),
                                     field<std::string>(changes[c], "old", cpath),
                                     field<std::string>(changes[c], "new", cpath)});
            }
            entry.endomorphisms.push_back(std::move(e));
        }
        r.repairs.push_back(std::move(entry));
    }
    return r;
}

std::string to_text(const RepairReport& r) {
    std::string out = r.kind + " instance " + r.digest + ", pool of " + std::to_string(r.pool_size) + "\n";
    for (std::size_t i = 0; i < r.repairs.size(); ++i) {
        const auto& entry = r.repairs[i];
        out += "repair " + std::to_string(i + 1) + " (cardinality " + std::to_string(entry.cardinality) + ")";
        if (entry.endomorphisms.empty()) out += ": already satisfied";
        out += "\n";
        for (const auto& e : entry.endomorphisms) {
            out += "  " + e.key + "\n";
            for (const auto& c : e.changes) out += "    " + cell(c) + ": " + c.old_value + " -> " + c.new_value + "\n";
        }
    }
    if (r.repairs.empty()) out += "no repair found\n";
    out += "search " + std::string(r.exhausted ? "ended" : "stopped") + ": " + r.reason + "\n";
    return out;
}

}  // namespace repairlab::report
