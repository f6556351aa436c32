#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace repairlab::layout {

/// Pixel box. right and bottom are derived.
struct Box {
    int left = 0;
    int top = 0;
    int width = 0;
    int height = 0;

    int right() const noexcept { return left + width; }
    int bottom() const noexcept { return top + height; }

    friend bool operator==(const Box&, const Box&) = default;
};

struct Element {
    /// Pre-order index path: the root is "0", its second child "0.1".
    std::string elem_id;
    std::string tag;
    std::optional<std::string> id;
    std::vector<std::string> classes;
    Box box;
    std::optional<std::string> text;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;

    bool has_class(std::string_view name) const;
    /// `tag#id.class` for messages.
    std::string describe() const;

    friend bool operator==(const Element&, const Element&) = default;
};

struct SnapshotMeta {
    std::optional<std::string> url;
    std::optional<std::string> captured_at;
    std::optional<std::string> warning;

    friend bool operator==(const SnapshotMeta&, const SnapshotMeta&) = default;
};

/// Page element tree, stored flat in pre-order (document order). Index 0 is the root.
class DomSnapshot {
public:
    DomSnapshot() = default;
    DomSnapshot(SnapshotMeta meta, std::vector<Element> elements, std::vector<std::string> rounded);

    std::span<const Element> elements() const noexcept { return elements_; }
    const Element& element(std::size_t i) const { return elements_.at(i); }
    std::size_t size() const noexcept { return elements_.size(); }
    const SnapshotMeta& meta() const noexcept { return meta_; }
    /// Element ids whose box had fractional values rounded half-up during ingestion.
    std::span<const std::string> rounded() const noexcept { return rounded_; }

    std::optional<std::size_t> find(std::string_view elem_id) const;
    /// Replaces the box of element `i`. Throws SchemaError on negative size.
    void set_box(std::size_t i, const Box& box);

    friend bool operator==(const DomSnapshot&, const DomSnapshot&) = default;

private:
    SnapshotMeta meta_;
    std::vector<Element> elements_;
    std::vector<std::string> rounded_;
};

/// Reads the snapshot JSON document. Fractional box values are rounded half-up and
/// recorded. Throws SchemaError whose path names the offending node.
DomSnapshot ingest_snapshot(std::string_view json_text);

/// Serializes back to the snapshot JSON schema.
std::string snapshot_to_json(const DomSnapshot& snapshot);

}  // namespace repairlab::layout
