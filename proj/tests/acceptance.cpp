// Acceptance run: one PASS/FAIL line per criterion, each with a time limit.
//
//   acceptance [--expect-fail N ...]
//
// Exits 0 when the failing criteria are exactly the expected ones, so a known and
// documented failure still shows as FAIL without hiding a new regression.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "generators.hpp"
#include "repairlab/core/repair.hpp"
#include "repairlab/fol/formula.hpp"
#include "repairlab/fol/instance.hpp"
#include "repairlab/fol/pools.hpp"
#include "repairlab/layout/omega.hpp"
#include "repairlab/layout/snapshot.hpp"
#include "repairlab/layout/spec.hpp"
#include "repairlab/layout/translate.hpp"
#include "repairlab/layout/verdict.hpp"
#include "repairlab/prop/prop.hpp"

using namespace repairlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(REPAIRLAB_FIXTURES) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join(const std::vector<Transformation>& ts) {
    std::string out;
    for (const auto& t : ts) out += (out.empty() ? "" : " ") + t.to_string();
    return out.empty() ? "(none)" : out;
}

// Keys with macro member lists stripped, for readable detail lines.
std::string short_keys(const std::vector<Transformation>& ts) {
    std::string out;
    for (const auto& t : ts) {
        std::string s;
        for (const auto& e : t) s += (s.empty() ? "" : ", ") + e.key().substr(0, e.key().find('{'));
        out += (out.empty() ? "{" : " {") + s + "}";
    }
    return out;
}

Spec<prop::Valuation> prop_spec(const prop::Formula& f) {
    return [f](const prop::Valuation& s) { return prop::eval_prop(f, s); };
}

Spec<fol::Interpretation> fol_spec(const fol::Formula& f, const fol::Interpretation& sig) {
    auto c = std::make_shared<fol::CompiledFormula>(f, sig);
    return [c](const fol::Interpretation& i) { return c->eval(i); };
}

Outcome expect_prop(const char* formula, const std::vector<std::string>& expected) {
    prop::Valuation s({{"a", true}, {"b", false}, {"c", false}});
    auto phi = prop_spec(prop::parse_formula(formula));
    auto r = enumerate_prime_repairs(phi, s, prop::prop_endo_pool(s));
    std::vector<std::string> got;
    for (const auto& t : r.repairs) got.push_back(t.to_string());
    auto want = expected;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    return {got == want && r.reason == Exhaustion::complete, std::string(formula) + ": " + join(r.repairs)};
}

Outcome partner() {
    // A = {0,1,2}, p = {(0,0),(0,1),(1,1)}; the expected answer is {p(2,0)=T} and {p(2,1)=T}.
    auto table = [](std::pair<const char*, const char*> third) {
        fol::Interpretation i;
        i.add_sort(fol::Sort{"A", {"0", "1", "2"}, false});
        i.add_function("p", {"A", "A"}, "bool");
        i.set("p", {"0", "0"}, "T");
        i.set("p", {"0", "1"}, "T");
        i.set("p", {third.first, third.second}, "T");
        return i;
    };
    const auto formula = fol::parse_formula("forall x in A (exists y in A (x != y & p(x, y)))");
    auto solve = [&](const fol::Interpretation& i) {
        auto pool = fol::fol_endo_pool(i);
        if (pool.size() != 18) throw std::runtime_error("point pool is not 18");
        return enumerate_prime_repairs(fol_spec(formula, i), i, pool).repairs;
    };
    const auto as_stated = solve(table({"1", "1"}));
    const std::string expected = "{p(2,0)=T} {p(2,1)=T}";
    if (join(as_stated) == expected) return {true, join(as_stated)};
    // Element 1's only edge in the stated table is the loop (1,1), which x != y excludes, so
    // 1 needs a partner as well. Report what the table gives and what (1,0) would give.
    const auto variant = solve(table({"1", "0"}));
    return {false, "stated table gives " + join(as_stated) + "; element 1 has no partner either (its only pair is (1,1)); "
                   "with (1,0) instead of (1,1) the result is " + join(variant)};
}

Outcome graph() {
    auto inst = fol::parse_fol_instance(slurp("graph.json"));
    const auto& sigma = inst.interpretation;
    auto phi = fol_spec(inst.formula, sigma);
    if (phi(sigma)) return {false, "fixture already satisfies the formula"};

    auto pool = fol::colour_change_pool(sigma, inst.graph->vertices, inst.graph->colours);
    auto edges = fol::edge_change_pool(sigma, inst.graph->vertices, inst.graph->adjacency);
    pool.insert(pool.end(), edges.begin(), edges.end());

    // A prime repair never uses a no-op, and never adds an edge (that only adds constraints),
    // so the oracle over what remains sees every prime repair of the whole pool.
    const std::regex addition(R"(^edge\([^)]*\)=T)");
    std::vector<Endomorphism> reduced;
    for (const auto& e : pool)
        if (!is_identity_on(e, sigma) && !std::regex_search(e.key(), addition)) reduced.push_back(e);

    const auto oracle = oracle_prime_repairs(phi, sigma, reduced);
    const auto on_reduced = enumerate_prime_repairs(phi, sigma, reduced);
    if (on_reduced.repairs != oracle) return {false, "enumerator and oracle differ on the reduced pool"};
    if (oracle.empty()) return {false, "no repairs"};

    SearchConfig bounded;
    bounded.max_cardinality = oracle.back().size() + 1;
    const auto on_full = enumerate_prime_repairs(phi, sigma, pool, bounded);
    if (on_full.repairs != oracle) return {false, "enumerator over the full pool differs from the oracle"};

    for (const auto& t : oracle)
        if (!phi(apply_transformation(t, sigma))) return {false, t.to_string() + " does not satisfy the formula"};
    if (auto bad = gen::check_prime_repairs(oracle, phi, sigma); !bad.empty()) return {false, bad};

    auto singleton = [&](const std::string& prefix) {
        return std::any_of(oracle.begin(), oracle.end(),
                           [&](const auto& t) { return t.size() == 1 && t.members()[0].key().starts_with(prefix); });
    };
    const bool colour = singleton("colour(5,") || singleton("colour(4,");
    const bool cut = singleton("edge(4,5)=F");
    std::ostringstream d;
    d << oracle.size() << " prime repairs; pool " << pool.size() << " (oracle over " << reduced.size()
      << " non-trivial colour changes and edge cuts), full pool enumerated to cardinality " << *bounded.max_cardinality
      << "; recolour 5: " << (colour ? "yes" : "no") << ", cut 4-5: " << (cut ? "yes" : "no");
    return {colour && cut, d.str()};
}

bool mentions(const layout::WitnessNode& n, std::size_t e) {
    if (n.element == e) return true;
    return std::any_of(n.children.begin(), n.children.end(), [&](const auto& c) { return mentions(c, e); });
}

Outcome layout_end_to_end() {
    const auto t = layout::ingest_snapshot(slurp("menu.json"));
    const auto spec = layout::parse_spec(slurp("align.cp"));
    const layout::BoxPool kinds[] = {layout::BoxPool::displace_h};
    auto problem = layout::build_layout_problem(t, spec, kinds, layout::ValuePolicy::parse("observed"));
    auto phi = fol_spec(problem.model.formula, problem.model.interpretation);
    const auto r = enumerate_prime_repairs(phi, problem.model.interpretation, problem.pool);
    const auto oracle = oracle_prime_repairs(phi, problem.model.interpretation, problem.pool);
    const std::string got = short_keys(r.repairs);
    const std::string want = "{move-h(0.0.1)=40} {move-h(0.0.0)=64, move-h(0.0.2)=64, move-h(0.0.3)=64}";
    if (r.repairs != oracle) return {false, "enumerator " + got + " differs from oracle " + short_keys(oracle)};
    if (got != want) return {false, "got " + got};

    const auto v = layout::omega(t, spec);
    const auto item2 = *t.find("0.0.1");
    const bool blamed = !v.falsehood_witness.empty() &&
                        std::all_of(v.falsehood_witness.begin(), v.falsehood_witness.end(),
                                    [&](const auto& tree) { return mentions(tree, item2); });
    if (v.value != layout::Truth::bottom || !blamed) return {false, "verdict " + std::string(to_string(v.value))};
    return {true, got + "; verdict false, " + std::to_string(v.falsehood_witness.size()) +
                      " falsehood trees, each containing item 2"};
}

Outcome property_suite() {
    gen::Rng rng(2024);
    std::size_t repairs = 0, max_pool = 0;
    for (int round = 0; round < 100; ++round) {
        std::string bad;
        if (round % 2 == 0) {
            auto c = gen::random_prop_case(rng);
            auto phi = prop_spec(c.phi);
            auto got = enumerate_prime_repairs(phi, c.sigma, c.pool).repairs;
            if (got != oracle_prime_repairs(phi, c.sigma, c.pool)) bad = "differs from oracle on " + c.phi.to_string();
            if (bad.empty()) bad = gen::check_prime_repairs(got, phi, c.sigma);
            repairs += got.size();
            max_pool = std::max(max_pool, c.pool.size());
        } else {
            auto c = gen::random_fol_case(rng);
            auto phi = fol_spec(c.phi, c.interp);
            auto got = enumerate_prime_repairs(phi, c.interp, c.pool).repairs;
            if (got != oracle_prime_repairs(phi, c.interp, c.pool)) bad = "differs from oracle on " + c.phi.to_string();
            if (bad.empty()) bad = gen::check_prime_repairs(got, phi, c.interp);
            repairs += got.size();
            max_pool = std::max(max_pool, c.pool.size());
        }
        if (!bad.empty()) return {false, "instance " + std::to_string(round) + ": " + bad};
    }
    return {true, "100 instances (50 propositional, 50 first-order), " + std::to_string(repairs) +
                      " prime repairs checked, largest pool " + std::to_string(max_pool)};
}

template <Structure S>
std::string permutations_agree(const std::vector<Endomorphism>& candidates, const S& sigma, gen::Rng& rng,
                               std::size_t& size) {
    const std::size_t want = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    std::vector<Endomorphism> members;
    for (const auto& e : candidates) {
        if (members.size() == want) break;
        members.push_back(e);
        if (!is_well_defined(Transformation(members))) members.pop_back();
    }
    size = members.size();
    const auto expected = apply_transformation(Transformation(members), sigma);
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    do {
        auto s = sigma;
        for (auto i : order) members[i].apply_in_place(s);
        if (!(s == expected)) return Transformation(members).to_string();
    } while (std::next_permutation(order.begin(), order.end()));
    return {};
}

Outcome order_independence() {
    gen::Rng rng(77);
    std::size_t perms = 0;
    std::set<std::size_t> sizes;
    for (int round = 0; round < 50; ++round) {
        std::string bad;
        std::size_t n = 0;
        if (round % 2 == 0) {
            auto c = gen::random_fol_case(rng);
            auto pool = fol::fol_endo_pool(c.interp);
            std::shuffle(pool.begin(), pool.end(), rng);
            bad = permutations_agree(pool, c.interp, rng, n);
        } else {
            // Displacement macros write two cells each and overlap when they move the same box.
            auto t = gen::random_snapshot(rng);
            const layout::BoxPool kinds[] = {layout::BoxPool::displace_h, layout::BoxPool::displace_v,
                                             layout::BoxPool::resize_h};
            auto problem = layout::build_layout_problem(t, layout::parse_spec("For each $x in $(li) ($x's left equals 0)."),
                                                        kinds, layout::ValuePolicy::parse("grid:20"));
            std::shuffle(problem.pool.begin(), problem.pool.end(), rng);
            bad = permutations_agree(problem.pool, problem.model.interpretation, rng, n);
        }
        if (!bad.empty()) return {false, "order matters for " + bad};
        std::size_t f = 1;
        for (std::size_t k = 2; k <= n; ++k) f *= k;
        perms += f;
        sizes.insert(n);
    }
    return {true, "50 transformations of sizes " + std::to_string(*sizes.begin()) + ".." +
                      std::to_string(*sizes.rbegin()) + ", " + std::to_string(perms) + " orders compared"};
}

Outcome verdict_algebra() {
    using layout::Truth;
    using layout::Verdict;
    using layout::Witness;
    auto leaf = [](std::size_t e) { return Witness{layout::WitnessNode{e, {}}}; };
    auto v = [](Truth b, Witness t, Witness f) { return Verdict{b, std::move(t), std::move(f)}; };
    const Witness both{{2, {}}, {3, {}}};
    std::vector<std::pair<std::string, bool>> cases = {
        {"and, b'=F", layout::verdict_and(v(Truth::top, {}, {}), std::nullopt, v(Truth::bottom, {}, leaf(1))) ==
                          v(Truth::bottom, {}, leaf(1))},
        {"and, b!=F b'=T", layout::verdict_and(v(Truth::top, leaf(2), {}), std::nullopt, v(Truth::top, leaf(3), {})) ==
                               v(Truth::top, both, {})},
        {"and, b!=F b'=?", layout::verdict_and(v(Truth::top, leaf(2), {}), std::nullopt,
                                               v(Truth::unknown, leaf(3), {})) == v(Truth::unknown, both, {})},
        {"and, otherwise", layout::verdict_and(v(Truth::bottom, leaf(2), leaf(3)), std::nullopt,
                                               v(Truth::top, leaf(1), {})) == v(Truth::bottom, leaf(2), leaf(3))},
        {"or, b'=T", layout::verdict_or(v(Truth::bottom, {}, {}), std::nullopt, v(Truth::top, leaf(1), {})) ==
                         v(Truth::top, leaf(1), {})},
        {"or, b!=T b'=F", layout::verdict_or(v(Truth::bottom, {}, leaf(2)), std::nullopt,
                                             v(Truth::bottom, {}, leaf(3))) == v(Truth::bottom, {}, both)},
        {"or, b!=T b'=?", layout::verdict_or(v(Truth::bottom, {}, leaf(2)), std::nullopt,
                                             v(Truth::unknown, {}, leaf(3))) == v(Truth::unknown, {}, both)},
        {"or, otherwise", layout::verdict_or(v(Truth::top, leaf(2), leaf(3)), std::nullopt,
                                             v(Truth::bottom, {}, leaf(1))) == v(Truth::top, leaf(2), leaf(3))},
        {"anchored and", layout::verdict_and(v(Truth::top, {}, {}), 7, v(Truth::bottom, {}, leaf(1))) ==
                             v(Truth::bottom, {}, Witness{{7, leaf(1)}})},
    };
    for (auto b : {Truth::top, Truth::bottom, Truth::unknown}) {
        auto x = v(b, Witness{{1, leaf(2)}}, Witness{{3, {}}, {4, leaf(5)}});
        cases.push_back({"double negation", layout::verdict_not(layout::verdict_not(x, std::nullopt), std::nullopt) == x});
    }
    for (const auto& [name, ok] : cases)
        if (!ok) return {false, "case '" + name + "' differs"};

    gen::Rng rng(11);
    std::size_t falses = 0;
    for (int round = 0; round < 100; ++round) {
        auto t = gen::random_snapshot(rng);
        auto spec = gen::random_layout_spec(rng);
        auto m = layout::to_interpretation(t, spec);
        const auto value = layout::omega(t, spec).value;
        const bool b = fol::eval_fol(m.formula, m.interpretation);
        if (value == Truth::unknown || (value == Truth::top) != b)
            return {false, "omega and eval_fol disagree on " + spec.to_string()};
        falses += !b;
    }
    return {true, std::to_string(cases.size()) + " verdict cases; omega agrees with eval_fol on 100 pairs (" +
                      std::to_string(falses) + " false)"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> expected_failures;
    app.add_option("--expect-fail", expected_failures, "criterion known to fail (repeatable)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "a & b has the single prime repair {b=T}", 1, [] { return expect_prop("a & b", {"{b=T}"}); }},
        {2, "a -> b has the prime repairs {b=T} and {a=F}", 1,
         [] { return expect_prop("a -> b", {"{b=T}", "{a=F}"}); }},
        {3, "partner example gives {p(2,0)=T} and {p(2,1)=T}", 5, partner},
        {4, "graph colouring: enumerator equals oracle over colour and edge changes", 60, graph},
        {5, "misaligned list: move item 2, or items 1, 3 and 4", 5, layout_end_to_end},
        {6, "prime repair properties on 100 random instances", 120, property_suite},
        {7, "transformation order independence", 60, order_independence},
        {8, "verdict algebra and omega agreement", 60, verdict_algebra},
    };

    std::set<int> failed;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.limit_seconds;
        const bool pass = o.ok && in_time;
        if (!pass) failed.insert(c.id);
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " [" << seconds << " s, limit "
             << c.limit_seconds << " s] " << c.title << "\n    " << o.detail;
        if (!in_time) line << "\n    over the time limit";
        std::cout << line.str() << "\n";
    }

    const std::set<int> expected(expected_failures.begin(), expected_failures.end());
    std::cout << "\n" << criteria.size() - failed.size() << " of " << criteria.size() << " criteria pass";
    if (!expected.empty()) {
        std::cout << "; expected failures:";
        for (int id : expected) std::cout << " " << id;
    }
    std::cout << "\n";
    return failed == expected ? 0 : 1;
}
