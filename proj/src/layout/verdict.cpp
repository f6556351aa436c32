#include "repairlab/layout/verdict.hpp"

namespace repairlab::layout {

std::string_view to_string(Truth t) noexcept {
    switch (t) {
        case Truth::top: return "true";
        case Truth::bottom: return "false";
        case Truth::unknown: return "inconclusive";
    }
    return "inconclusive";
}

void attach(Witness& w, Anchor n, const Witness& sub) {
    if (!n) {
        w.insert(w.end(), sub.begin(), sub.end());
        return;
    }
    w.push_back(WitnessNode{*n, sub});
}

Verdict verdict_and(Verdict v, Anchor n, const Verdict& other) {
    if (other.value == Truth::bottom) {
        v.value = Truth::bottom;
        attach(v.falsehood_witness, n, other.falsehood_witness);
    } else if (v.value != Truth::bottom && other.value == Truth::unknown) {
        v.value = Truth::unknown;
        attach(v.truth_witness, n, other.truth_witness);
    } else if (v.value != Truth::bottom && other.value == Truth::top) {
        attach(v.truth_witness, n, other.truth_witness);
    }
    return v;
}

Verdict verdict_or(Verdict v, Anchor n, const Verdict& other) {
    if (other.value == Truth::top) {
        v.value = Truth::top;
        attach(v.truth_witness, n, other.truth_witness);
    } else if (v.value != Truth::top && other.value == Truth::unknown) {
        v.value = Truth::unknown;
        attach(v.falsehood_witness, n, other.falsehood_witness);
    } else if (v.value != Truth::top && other.value == Truth::bottom) {
        attach(v.falsehood_witness, n, other.falsehood_witness);
    }
    return v;
}

Verdict verdict_not(const Verdict& v, Anchor n) {
    Verdict out;
    out.value = v.value == Truth::top ? Truth::bottom : v.value == Truth::bottom ? Truth::top : Truth::unknown;
    attach(out.truth_witness, n, v.falsehood_witness);
    attach(out.falsehood_witness, n, v.truth_witness);
    return out;
}

}  // namespace repairlab::layout
