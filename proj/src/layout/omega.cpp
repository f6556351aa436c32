#include "repairlab/layout/omega.hpp"

#include <utility>
#include <vector>

#include "json.hpp"
#include "repairlab/core/error.hpp"

namespace repairlab::layout {

namespace {

using Bindings = std::vector<std::pair<std::string, std::size_t>>;

std::size_t bound(const Bindings& env, const std::string& var) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == var) return it->second;
    throw EvalError("unbound variable $" + var);
}

int value_of(const DomSnapshot& t, const Bindings& env, const ValueTerm& term) {
    if (term.is_constant()) return term.constant;
    return attribute_value(t.element(bound(env, *term.variable)).box, term.attribute);
}

Witness operands(const Bindings& env, const ValueTerm& a, const ValueTerm& b) {
    Witness w;
    if (!a.is_constant()) w.push_back({bound(env, *a.variable), {}});
    if (!b.is_constant()) {
        auto e = bound(env, *b.variable);
        if (w.empty() || w.front().element != e) w.push_back({e, {}});
    }
    return w;
}

class Evaluator {
public:
    explicit Evaluator(const DomSnapshot& t) : t_(t) {}

    Verdict eval(const LayoutSpec& phi, Bindings& env) {
        using K = LayoutSpec::Kind;
        switch (phi.kind()) {
            case K::compare: {
                bool ok = compare(phi.op(), value_of(t_, env, phi.lhs_term()), value_of(t_, env, phi.rhs_term()));
                Witness w = operands(env, phi.lhs_term(), phi.rhs_term());
                return ok ? Verdict{Truth::top, std::move(w), {}} : Verdict{Truth::bottom, {}, std::move(w)};
            }
            case K::negation: return verdict_not(eval(phi.body(), env), std::nullopt);
            case K::conjunction: {
                Verdict v = verdict_and(Verdict{Truth::top, {}, {}}, std::nullopt, eval(phi.lhs(), env));
                return verdict_and(std::move(v), std::nullopt, eval(phi.rhs(), env));
            }
            case K::disjunction: {
                Verdict v = verdict_or(Verdict{Truth::bottom, {}, {}}, std::nullopt, eval(phi.lhs(), env));
                return verdict_or(std::move(v), std::nullopt, eval(phi.rhs(), env));
            }
            case K::implication: {
                Verdict v = verdict_or(Verdict{Truth::bottom, {}, {}}, std::nullopt,
                                       verdict_not(eval(phi.lhs(), env), std::nullopt));
                return verdict_or(std::move(v), std::nullopt, eval(phi.rhs(), env));
            }
            case K::for_each:
            case K::there_exists: {
                const bool universal = phi.kind() == K::for_each;
                Verdict acc{universal ? Truth::top : Truth::bottom, {}, {}};
                for (auto e : select(t_, phi.selector())) {
                    env.emplace_back(phi.variable(), e);
                    Verdict sub = eval(phi.body(), env);
                    env.pop_back();
                    acc = universal ? verdict_and(std::move(acc), e, sub) : verdict_or(std::move(acc), e, sub);
                }
                return acc;
            }
        }
        return {};
    }

    bool truth(const LayoutSpec& phi, Bindings& env) {
        using K = LayoutSpec::Kind;
        switch (phi.kind()) {
            case K::compare:
                return compare(phi.op(), value_of(t_, env, phi.lhs_term()), value_of(t_, env, phi.rhs_term()));
            case K::negation: return !truth(phi.body(), env);
            case K::conjunction: return truth(phi.lhs(), env) && truth(phi.rhs(), env);
            case K::disjunction: return truth(phi.lhs(), env) || truth(phi.rhs(), env);
            case K::implication: return !truth(phi.lhs(), env) || truth(phi.rhs(), env);
            case K::for_each:
            case K::there_exists: {
                const bool universal = phi.kind() == K::for_each;
                for (auto e : select(t_, phi.selector())) {
                    env.emplace_back(phi.variable(), e);
                    bool sub = truth(phi.body(), env);
                    env.pop_back();
                    if (sub != universal) return sub;
                }
                return universal;
            }
        }
        return false;
    }

private:
    const DomSnapshot& t_;
};

nlohmann::json witness_json(const DomSnapshot& t, const Witness& w) {
    auto out = nlohmann::json::array();
    for (const auto& n : w)
        out.push_back({{"elem", t.element(n.element).elem_id}, {"children", witness_json(t, n.children)}});
    return out;
}

}  // namespace

Verdict omega(const DomSnapshot& t, const LayoutSpec& phi) {
    Bindings env;
    return Evaluator(t).eval(phi, env);
}

bool holds(const DomSnapshot& t, const LayoutSpec& phi) {
    Bindings env;
    return Evaluator(t).truth(phi, env);
}

std::string witness_to_json(const DomSnapshot& t, const Witness& w) { return witness_json(t, w).dump(); }

std::string witness_to_text(const DomSnapshot& t, const Witness& w, int indent) {
    std::string out;
    for (const auto& n : w) {
        const auto& e = t.element(n.element);
        out += std::string(static_cast<std::size_t>(indent) * 2, ' ') + e.elem_id + " " + e.describe() + "\n";
        out += witness_to_text(t, n.children, indent + 1);
    }
    return out;
}

}  // namespace repairlab::layout
