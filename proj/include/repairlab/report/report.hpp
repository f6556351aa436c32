#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "repairlab/core/endomorphism.hpp"
#include "repairlab/core/repair.hpp"
#include "repairlab/core/transformation.hpp"

namespace repairlab::report {

/// One changed cell: `function(args)` goes from old_value to new_value.
struct ValueChange {
    std::string function;
    std::vector<std::string> args;
    std::string old_value;
    std::string new_value;

    friend bool operator==(const ValueChange&, const ValueChange&) = default;
};

struct EndoChange {
    std::string key;
    std::vector<ValueChange> changes;

    friend bool operator==(const EndoChange&, const EndoChange&) = default;
};

struct RepairEntry {
    std::size_t cardinality = 0;
    std::vector<EndoChange> endomorphisms;

    friend bool operator==(const RepairEntry&, const RepairEntry&) = default;
};

/// What `repair` and `oracle` print. Deliberately free of timing and search counters, so
/// two runs (or the two commands) on the same input produce byte-identical JSON.
struct RepairReport {
    std::string digest;
    std::string kind;
    std::size_t pool_size = 0;
    std::vector<RepairEntry> repairs;
    bool exhausted = true;
    std::string reason = "complete";

    friend bool operator==(const RepairReport&, const RepairReport&) = default;
};

/// Old values are read from `sigma`, new ones from each write's label.
template <Structure S>
RepairEntry describe(const Transformation& t, const S& sigma) {
    RepairEntry entry{t.size(), {}};
    for (const auto& e : t) {
        EndoChange change{e.key(), {}};
        for (const auto& w : e.writes())
            change.changes.push_back({w.function, w.args, sigma.value_label(w.cell), w.value_label});
        entry.endomorphisms.push_back(std::move(change));
    }
    return entry;
}

template <Structure S>
RepairReport make_report(std::string digest, std::string kind, std::size_t pool_size,
                         const std::vector<Transformation>& repairs, Exhaustion reason, const S& sigma) {
    RepairReport r{std::move(digest), std::move(kind), pool_size, {}, reason != Exhaustion::none,
                   std::string(to_string(reason))};
    for (const auto& t : repairs) r.repairs.push_back(describe(t, sigma));
    return r;
}

/// 16 hex digits of FNV-1a 64 over the given parts, each followed by a NUL.
std::string digest(const std::vector<std::string_view>& parts);

std::string to_json(const RepairReport& r);
/// Throws SchemaError on malformed input.
RepairReport report_from_json(std::string_view text);
std::string to_text(const RepairReport& r);

}  // namespace repairlab::report
