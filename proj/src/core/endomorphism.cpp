#include "repairlab/core/endomorphism.hpp"

#include <algorithm>

#include "repairlab/core/error.hpp"

namespace repairlab {

std::string CellWrite::cell_label() const {
    if (args.empty()) return function;
    std::string out = function + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ")";
}

std::string CellWrite::label() const { return cell_label() + "=" + value_label; }

Endomorphism::Endomorphism(std::string key, std::vector<CellWrite> writes)
    : key_(std::move(key)), writes_(std::move(writes)) {
    std::sort(writes_.begin(), writes_.end(),
              [](const CellWrite& a, const CellWrite& b) { return a.cell < b.cell; });
    auto dup = std::adjacent_find(writes_.begin(), writes_.end(),
                                  [](const CellWrite& a, const CellWrite& b) { return a.cell == b.cell; });
    if (dup != writes_.end())
        throw IllDefinedTransformation("endomorphism " + key_ + " writes " + dup->cell_label() +
                                       " twice");
}

std::vector<Cell> Endomorphism::footprint() const {
    std::vector<Cell> cells;
    cells.reserve(writes_.size());
    for (const auto& w : writes_) cells.push_back(w.cell);
    return cells;
}

bool Endomorphism::overlaps(const Endomorphism& other) const noexcept {
    // Both write lists are sorted by cell.
    auto a = writes_.begin();
    auto b = other.writes_.begin();
    while (a != writes_.end() && b != other.writes_.end()) {
        if (a->cell < b->cell)
            ++a;
        else if (b->cell < a->cell)
            ++b;
        else
            return true;
    }
    return false;
}

Endomorphism make_macro(const std::string& name, std::span<const Endomorphism> members) {
    std::vector<const Endomorphism*> sorted;
    for (const auto& m : members) sorted.push_back(&m);
    std::sort(sorted.begin(), sorted.end(),
              [](const Endomorphism* a, const Endomorphism* b) { return a->key() < b->key(); });

    std::string key = name + "{";
    std::vector<CellWrite> writes;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (sorted[i]->overlaps(*sorted[j]))
                throw IllDefinedTransformation("macro " + name + ": members " + sorted[j]->key() +
                                               " and " + sorted[i]->key() + " overlap");
        if (i) key += ',';
        key += sorted[i]->key();
        writes.insert(writes.end(), sorted[i]->writes().begin(), sorted[i]->writes().end());
    }
    key += '}';
    return Endomorphism(std::move(key), std::move(writes));
}

}  // namespace repairlab
