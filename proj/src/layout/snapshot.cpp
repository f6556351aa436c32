#include "repairlab/layout/snapshot.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "repairlab/core/error.hpp"

namespace repairlab::layout {

using nlohmann::json;

bool Element::has_class(std::string_view name) const {
    return std::find(classes.begin(), classes.end(), name) != classes.end();
}

std::string Element::describe() const {
    std::string out = tag;
    if (id) out += "#" + *id;
    for (const auto& c : classes) out += "." + c;
    return out;
}

DomSnapshot::DomSnapshot(SnapshotMeta meta, std::vector<Element> elements, std::vector<std::string> rounded)
    : meta_(std::move(meta)), elements_(std::move(elements)), rounded_(std::move(rounded)) {}

std::optional<std::size_t> DomSnapshot::find(std::string_view elem_id) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].elem_id == elem_id) return i;
    return std::nullopt;
}

void DomSnapshot::set_box(std::size_t i, const Box& box) {
    if (box.width < 0 || box.height < 0)
        throw SchemaError(elements_.at(i).elem_id, "negative box size");
    elements_.at(i).box = box;
}

namespace {

class Reader {
public:
    std::vector<Element> elements;
    std::vector<std::string> rounded;

    void node(const json& n, const std::string& path, const std::string& elem_id,
              std::optional<std::size_t> parent) {
        if (!n.is_object()) throw SchemaError(path, "node must be an object");
        const std::size_t index = elements.size();
        elements.emplace_back();
        Element e;
        e.elem_id = elem_id;
        e.parent = parent;
        e.tag = string_field(n, "tag", path, elem_id);
        if (auto it = n.find("id"); it != n.end()) e.id = as_string(*it, path + ".id", elem_id);
        if (auto it = n.find("text"); it != n.end()) e.text = as_string(*it, path + ".text", elem_id);

        const json& classes = required(n, "classes", path, elem_id);
        if (!classes.is_array()) fail(path + ".classes", elem_id, "expected an array");
        for (std::size_t i = 0; i < classes.size(); ++i)
            e.classes.push_back(as_string(classes[i], path + ".classes[" + std::to_string(i) + "]", elem_id));

        const json& box = required(n, "box", path, elem_id);
        if (!box.is_object()) fail(path + ".box", elem_id, "expected an object");
        bool was_rounded = false;
        e.box.left = pixel(box, "left", path + ".box", elem_id, was_rounded);
        e.box.top = pixel(box, "top", path + ".box", elem_id, was_rounded);
        e.box.width = pixel(box, "width", path + ".box", elem_id, was_rounded);
        e.box.height = pixel(box, "height", path + ".box", elem_id, was_rounded);
        if (e.box.width < 0) fail(path + ".box.width", elem_id, "negative width " + std::to_string(e.box.width));
        if (e.box.height < 0)
            fail(path + ".box.height", elem_id, "negative height " + std::to_string(e.box.height));
        if (was_rounded) rounded.push_back(elem_id);

        const json& children = required(n, "children", path, elem_id);
        if (!children.is_array()) fail(path + ".children", elem_id, "expected an array");
        elements[index] = std::move(e);
        for (std::size_t i = 0; i < children.size(); ++i) {
            const std::size_t child_index = elements.size();
            elements[index].children.push_back(child_index);
            node(children[i], path + ".children[" + std::to_string(i) + "]", elem_id + "." + std::to_string(i),
                 index);
        }
    }

private:
    [[noreturn]] static void fail(const std::string& path, const std::string& elem_id, const std::string& what) {
        throw SchemaError(path, what + " (element " + elem_id + ")");
    }

    static const json& required(const json& n, const char* key, const std::string& path, const std::string& elem_id) {
        auto it = n.find(key);
        if (it == n.end()) fail(path, elem_id, std::string("missing field '") + key + "'");
        return *it;
    }

    static std::string as_string(const json& v, const std::string& path, const std::string& elem_id) {
        if (!v.is_string()) fail(path, elem_id, "expected a string");
        return v.get<std::string>();
    }

    static std::string string_field(const json& n, const char* key, const std::string& path,
                                    const std::string& elem_id) {
        return as_string(required(n, key, path, elem_id), path + "." + key, elem_id);
    }

    static int pixel(const json& box, const char* key, const std::string& path, const std::string& elem_id,
                     bool& was_rounded) {
        const json& v = required(box, key, path, elem_id);
        if (v.is_number_integer()) return static_cast<int>(v.get<long long>());
        if (v.is_number_float()) {
            double d = v.get<double>();
            double r = std::floor(d + 0.5);
            if (r != d) was_rounded = true;
            return static_cast<int>(r);
        }
        fail(path + "." + key, elem_id, "expected a number");
    }
};

}  // namespace

DomSnapshot ingest_snapshot(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("$", "expected an object");

    SnapshotMeta meta;
    if (auto m = doc.find("meta"); m != doc.end()) {
        if (!m->is_object()) throw SchemaError("$.meta", "expected an object");
        auto opt = [&](const char* key) -> std::optional<std::string> {
            auto it = m->find(key);
            if (it == m->end()) return std::nullopt;
            if (!it->is_string()) throw SchemaError(std::string("$.meta.") + key, "expected a string");
            return it->get<std::string>();
        };
        meta.url = opt("url");
        meta.captured_at = opt("captured_at");
        meta.warning = opt("warning");
    }
    auto root = doc.find("root");
    if (root == doc.end()) throw SchemaError("$", "missing field 'root'");

    Reader reader;
    reader.node(*root, "$.root", "0", std::nullopt);
    return DomSnapshot(std::move(meta), std::move(reader.elements), std::move(reader.rounded));
}

namespace {

json node_json(const DomSnapshot& t, std::size_t i) {
    const auto& e = t.element(i);
    json n;
    n["tag"] = e.tag;
    if (e.id) n["id"] = *e.id;
    n["classes"] = e.classes;
    n["box"] = {{"left", e.box.left}, {"top", e.box.top}, {"width", e.box.width}, {"height", e.box.height}};
    if (e.text) n["text"] = *e.text;
    n["children"] = json::array();
    for (auto c : e.children) n["children"].push_back(node_json(t, c));
    return n;
}

}  // namespace

std::string snapshot_to_json(const DomSnapshot& snapshot) {
    json doc;
    doc["meta"] = json::object();
    if (snapshot.meta().url) doc["meta"]["url"] = *snapshot.meta().url;
    if (snapshot.meta().captured_at) doc["meta"]["captured_at"] = *snapshot.meta().captured_at;
    if (snapshot.meta().warning) doc["meta"]["warning"] = *snapshot.meta().warning;
    if (snapshot.size() > 0) doc["root"] = node_json(snapshot, 0);
    return doc.dump(2);
}

}  // namespace repairlab::layout
