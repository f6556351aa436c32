#include "repairlab/layout/translate.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <map>

#include "repairlab/core/error.hpp"
#include "repairlab/fol/pools.hpp"
#include "repairlab/layout/selector.hpp"

namespace repairlab::layout {

namespace {

constexpr Attribute kTables[] = {Attribute::left,  Attribute::top,   Attribute::width,
                                 Attribute::height, Attribute::right, Attribute::bottom};

std::string px(int v) { return std::to_string(v); }

class Translator {
public:
    /// `in<i>` for each selector whose matches are a proper subset of E, empty otherwise.
    Translator(const std::vector<Selector>& selectors, const std::vector<std::vector<std::size_t>>& matches,
               std::size_t e_size) {
        for (std::size_t i = 0; i < selectors.size(); ++i)
            guard_[selectors[i].to_string()] = matches[i].size() == e_size ? std::string() : "in" + std::to_string(i);
    }

    fol::Formula formula(const LayoutSpec& phi) const {
        using K = LayoutSpec::Kind;
        switch (phi.kind()) {
            case K::compare: return compare(phi);
            case K::negation: return fol::Formula::negation(formula(phi.body()));
            case K::conjunction: return fol::Formula::conjunction(formula(phi.lhs()), formula(phi.rhs()));
            case K::disjunction: return fol::Formula::disjunction(formula(phi.lhs()), formula(phi.rhs()));
            case K::implication: return fol::Formula::implication(formula(phi.lhs()), formula(phi.rhs()));
            case K::for_each:
            case K::there_exists: {
                const auto& g = guard_.at(phi.selector().to_string());
                fol::Formula body = formula(phi.body());
                if (!g.empty()) {
                    auto member = fol::Formula::atom(fol::Term::apply(g, {fol::Term::symbol(phi.variable())}));
                    body = phi.kind() == K::for_each ? fol::Formula::implication(member, body)
                                                     : fol::Formula::conjunction(member, body);
                }
                return phi.kind() == K::for_each ? fol::Formula::forall(phi.variable(), "E", body)
                                                 : fol::Formula::exists(phi.variable(), "E", body);
            }
        }
        return fol::Formula::constant(true);
    }

private:
    static fol::CompareOp op(LayoutOp o) {
        switch (o) {
            case LayoutOp::equals: return fol::CompareOp::eq;
            case LayoutOp::greater_than: return fol::CompareOp::gt;
            case LayoutOp::less_than: return fol::CompareOp::lt;
        }
        return fol::CompareOp::eq;
    }

    static fol::Term term(const ValueTerm& v) {
        if (v.is_constant()) return fol::Term::symbol(px(v.constant));
        return fol::Term::apply(std::string(to_string(v.attribute)), {fol::Term::symbol(*v.variable)});
    }

    fol::Formula compare(const LayoutSpec& phi) const {
        const auto& a = phi.lhs_term();
        const auto& b = phi.rhs_term();
        // Two literals need no sort at all.
        if (a.is_constant() && b.is_constant())
            return fol::Formula::constant(layout::compare(phi.op(), a.constant, b.constant));
        return fol::Formula::compare(op(phi.op()), term(a), term(b));
    }

    std::map<std::string, std::string> guard_;
};

}  // namespace

LayoutModel to_interpretation(const DomSnapshot& t, const LayoutSpec& phi, std::span<const int> extra_pixels) {
    const auto selectors = phi.selectors();

    std::set<std::size_t> matched;
    std::vector<std::vector<std::size_t>> matches;
    for (const auto& s : selectors) {
        matches.push_back(select(t, s));
        matched.insert(matches.back().begin(), matches.back().end());
    }

    LayoutModel m;
    m.elements.assign(matched.begin(), matched.end());

    std::set<int> pixels(extra_pixels.begin(), extra_pixels.end());
    for (int c : phi.constants()) pixels.insert(c);
    for (auto e : m.elements)
        for (auto a : kTables) pixels.insert(attribute_value(t.element(e).box, a));
    if (pixels.empty()) pixels.insert(0);

    fol::Sort e_sort{"E", {}, false};
    for (auto e : m.elements) e_sort.elements.push_back(t.element(e).elem_id);
    fol::Sort p_sort{"P", {}, true};
    for (int p : pixels) p_sort.elements.push_back(px(p));

    auto& I = m.interpretation;
    I.add_sort(std::move(e_sort));
    I.add_sort(std::move(p_sort));
    for (auto a : kTables) {
        const std::string name(to_string(a));
        I.add_function(name, {"E"}, "P");
        for (auto e : m.elements) I.set(name, {t.element(e).elem_id}, px(attribute_value(t.element(e).box, a)));
    }

    Translator tr(selectors, matches, m.elements.size());
    for (std::size_t i = 0; i < selectors.size(); ++i) {
        if (matches[i].size() == m.elements.size()) continue;
        const std::string name = "in" + std::to_string(i);
        I.add_function(name, {"E"}, "bool");
        for (auto e : matches[i]) I.set(name, {t.element(e).elem_id}, "T");
    }
    m.formula = tr.formula(phi);
    return m;
}

ValuePolicy ValuePolicy::parse(std::string_view text) {
    auto number = [&](std::string_view s) {
        int v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || end != s.data() + s.size() || s.empty())
            throw Error("bad pixel value '" + std::string(s) + "' in --values " + std::string(text));
        return v;
    };
    ValuePolicy p;
    if (text == "observed") return p;
    if (text.starts_with("grid:")) {
        p.kind = Kind::grid;
        p.step = number(text.substr(5));
        if (p.step <= 0) throw Error("grid step must be positive, got " + std::to_string(p.step));
        return p;
    }
    if (text.starts_with("list:")) {
        p.kind = Kind::list;
        auto rest = text.substr(5);
        while (true) {
            auto comma = rest.find(',');
            p.values.push_back(number(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return p;
    }
    throw Error("unknown value policy '" + std::string(text) + "' (expected observed, grid:<step> or list:<v,...>)");
}

std::vector<int> candidate_values(const DomSnapshot& t, std::span<const std::size_t> elements, Attribute attr,
                                  const ValuePolicy& policy) {
    std::set<int> out;
    for (auto e : elements) out.insert(attribute_value(t.element(e).box, attr));
    switch (policy.kind) {
        case ValuePolicy::Kind::observed: break;
        case ValuePolicy::Kind::grid: {
            if (policy.step <= 0) throw Error("grid step must be positive, got " + std::to_string(policy.step));
            const bool horizontal = attr == Attribute::left || attr == Attribute::right || attr == Attribute::width;
            int extent = 0;
            for (const auto& el : t.elements())
                extent = std::max(extent, horizontal ? el.box.right() : el.box.bottom());
            for (int v = 0; v <= extent; v += policy.step) out.insert(v);
            break;
        }
        case ValuePolicy::Kind::list: out.insert(policy.values.begin(), policy.values.end()); break;
    }
    return {out.begin(), out.end()};
}

std::vector<int> implied_pixels(const DomSnapshot& t, std::span<const std::size_t> elements, Axis axis,
                                bool resize, std::span<const int> values) {
    std::set<int> out(values.begin(), values.end());
    for (auto e : elements) {
        const auto& b = t.element(e).box;
        // far edge = near edge + size, with one of the two replaced by the candidate
        int fixed = axis == Axis::horizontal ? (resize ? b.left : b.width) : (resize ? b.top : b.height);
        for (int v : values) out.insert(fixed + v);
    }
    return {out.begin(), out.end()};
}

namespace {

std::vector<Endomorphism> box_pool(const LayoutModel& m, const DomSnapshot& t, Axis axis, bool resize,
                                   std::span<const int> values) {
    const bool h = axis == Axis::horizontal;
    const Attribute moved = resize ? (h ? Attribute::width : Attribute::height) : (h ? Attribute::left : Attribute::top);
    const Attribute kept = resize ? (h ? Attribute::left : Attribute::top) : (h ? Attribute::width : Attribute::height);
    const Attribute far = h ? Attribute::right : Attribute::bottom;
    const std::string prefix = std::string(resize ? "resize-" : "move-") + (h ? "h" : "v");

    std::vector<Endomorphism> pool;
    for (auto e : m.elements) {
        const auto& el = t.element(e);
        const int current = attribute_value(el.box, moved);
        const int base = attribute_value(el.box, kept);
        for (int v : values) {
            if (v == current || v < 0) continue;
            std::vector<Endomorphism> updates{
                fol::point_update(m.interpretation, std::string(to_string(moved)), {el.elem_id}, px(v)),
                fol::point_update(m.interpretation, std::string(to_string(far)), {el.elem_id}, px(base + v)),
            };
            pool.push_back(fol::macro_endo(prefix + "(" + el.elem_id + ")=" + px(v), updates));
        }
    }
    return pool;
}

}  // namespace

std::vector<Endomorphism> displacement_pool(const LayoutModel& m, const DomSnapshot& t, Axis axis,
                                            std::span<const int> values) {
    return box_pool(m, t, axis, false, values);
}

std::vector<Endomorphism> resize_pool(const LayoutModel& m, const DomSnapshot& t, Axis axis,
                                      std::span<const int> values) {
    return box_pool(m, t, axis, true, values);
}

LayoutProblem build_layout_problem(const DomSnapshot& t, const LayoutSpec& phi, std::span<const BoxPool> pools,
                                   const ValuePolicy& policy) {
    struct Plan {
        Axis axis;
        bool resize;
        std::vector<int> values;
    };
    const auto elements = to_interpretation(t, phi).elements;
    std::vector<Plan> plans;
    std::set<int> extra;
    for (auto kind : pools) {
        Plan p{kind == BoxPool::displace_h || kind == BoxPool::resize_h ? Axis::horizontal : Axis::vertical,
               kind == BoxPool::resize_h || kind == BoxPool::resize_v, {}};
        const Attribute attr = p.resize ? (p.axis == Axis::horizontal ? Attribute::width : Attribute::height)
                                        : (p.axis == Axis::horizontal ? Attribute::left : Attribute::top);
        p.values = candidate_values(t, elements, attr, policy);
        for (int v : implied_pixels(t, elements, p.axis, p.resize, p.values)) extra.insert(v);
        plans.push_back(std::move(p));
    }

    const std::vector<int> extra_pixels(extra.begin(), extra.end());
    LayoutProblem out{to_interpretation(t, phi, extra_pixels), {}};
    for (const auto& p : plans) {
        auto pool = box_pool(out.model, t, p.axis, p.resize, p.values);
        out.pool.insert(out.pool.end(), std::make_move_iterator(pool.begin()), std::make_move_iterator(pool.end()));
    }
    return out;
}

DomSnapshot apply_model(const DomSnapshot& t, const LayoutModel& m, const fol::Interpretation& repaired) {
    DomSnapshot out = t;
    auto value = [&](std::string_view f, const std::string& id) { return std::stoi(repaired.get(f, {id})); };
    for (auto e : m.elements) {
        const auto& id = t.element(e).elem_id;
        out.set_box(e, Box{value("left", id), value("top", id), value("width", id), value("height", id)});
    }
    return out;
}

}  // namespace repairlab::layout
