#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "generators.hpp"
#include "repairlab/core/error.hpp"
#include "repairlab/core/repair.hpp"
#include "repairlab/fol/formula.hpp"
#include "repairlab/fol/instance.hpp"
#include "repairlab/fol/pools.hpp"

using namespace repairlab;
using namespace repairlab::fol;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(REPAIRLAB_FIXTURES) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Interpretation partner_table(bool one_zero_instead_of_one_one) {
    Interpretation i;
    i.add_sort(Sort{"A", {"0", "1", "2"}, false});
    i.add_function("p", {"A", "A"}, "bool");
    i.set("p", {"0", "0"}, "T");
    i.set("p", {"0", "1"}, "T");
    if (one_zero_instead_of_one_one)
        i.set("p", {"1", "0"}, "T");
    else
        i.set("p", {"1", "1"}, "T");
    return i;
}

const char* kPartner = "forall x in A (exists y in A (x != y & p(x, y)))";

Spec<Interpretation> compiled(const Formula& phi, const Interpretation& sig) {
    auto c = std::make_shared<CompiledFormula>(phi, sig);
    return [c](const Interpretation& i) { return c->eval(i); };
}

std::vector<std::string> keys(const std::vector<Transformation>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(t.to_string());
    return out;
}

}  // namespace

TEST(FolParse, QuantifiersConnectivesAndDotSugar) {
    auto phi = parse_formula("forall x in A: exists y in A (x.f = y & !(x < y)) -> true");
    EXPECT_EQ(phi.kind(), Formula::Kind::forall);
    EXPECT_EQ(phi.body().kind(), Formula::Kind::implication);
    EXPECT_EQ(parse_formula("forall x in A (p(x)) -> q").kind(), Formula::Kind::implication);
    EXPECT_EQ(parse_formula(phi.to_string()).to_string(), phi.to_string());
    EXPECT_THROW(parse_formula("forall x (p(x))"), ParseError);
    EXPECT_THROW(parse_formula("p(x"), ParseError);
    EXPECT_THROW(parse_formula("x ="), ParseError);
}

TEST(FolEval, PartnerFormulaIsViolated) {
    auto i = partner_table(false);
    EXPECT_FALSE(eval_fol(parse_formula(kPartner), i));
}

TEST(FolEval, OneUpdateDoesNotFixBothLonelyElements) {
    // With p = {(0,0), (0,1), (1,1)} both 1 and 2 lack a partner, so p(2,0) alone is not enough.
    auto i = partner_table(false);
    auto phi = parse_formula(kPartner);
    EXPECT_FALSE(eval_fol(phi, point_update(i, "p", {"2", "0"}, "T")(i)));
    EXPECT_FALSE(eval_fol(parse_formula("exists y in A (1 != y & p(1, y))"), i));
    auto fixed = point_update(i, "p", {"1", "0"}, "T")(point_update(i, "p", {"2", "0"}, "T")(i));
    EXPECT_TRUE(eval_fol(phi, fixed));
}

TEST(FolEval, QuantifierOverEmptySort) {
    Interpretation i;
    i.add_sort(Sort{"A", {}, false});
    EXPECT_TRUE(eval_fol(parse_formula("forall x in A (x = x)"), i));
    EXPECT_FALSE(eval_fol(parse_formula("exists x in A (x = x)"), i));
    Interpretation j;
    j.add_sort(Sort{"A", {"0", "1"}, false});
    EXPECT_TRUE(eval_fol(parse_formula("forall x in A (x = x)"), j));
}

TEST(FolEval, QuantifiersEqualTheirExpansion) {
    gen::Rng rng(17);
    for (int round = 0; round < 100; ++round) {
        auto c = gen::random_fol_case(rng);
        const auto& phi = c.phi;
        if (phi.kind() != Formula::Kind::forall && phi.kind() != Formula::Kind::exists) continue;
        const bool all = phi.kind() == Formula::Kind::forall;
        bool expanded = all;
        for (const auto& e : c.interp.sort(c.interp.sort_index("A")).elements) {
            bool v = eval_fol(phi.body(), c.interp, {{phi.variable(), Binding{"A", e}}});
            expanded = all ? (expanded && v) : (expanded || v);
        }
        ASSERT_EQ(eval_fol(phi, c.interp), expanded) << phi.to_string();
    }
}

TEST(FolEval, ErrorsOnBadSymbols) {
    auto i = partner_table(false);
    EXPECT_THROW(eval_fol(parse_formula("p(x, 0)"), i), EvalError);
    EXPECT_THROW(eval_fol(parse_formula("forall x in B (p(x, x))"), i), EvalError);
    EXPECT_THROW(eval_fol(parse_formula("forall x in A (q(x))"), i), EvalError);
    EXPECT_THROW(eval_fol(parse_formula("forall x in A (x < x)"), i), EvalError);  // unordered sort
}

TEST(FolEval, OrderedSortsCompare) {
    Interpretation i;
    i.add_sort(Sort{"P", {"10", "20", "30"}, true});
    i.add_sort(Sort{"E", {"a", "b"}, false});
    i.add_function("left", {"E"}, "P");
    i.set("left", {"a"}, "10");
    i.set("left", {"b"}, "30");
    EXPECT_TRUE(eval_fol(parse_formula("a.left < b.left"), i));
    EXPECT_TRUE(eval_fol(parse_formula("left(b) >= 20"), i));
    EXPECT_FALSE(eval_fol(parse_formula("forall e in E (e.left <= 10)"), i));
}

TEST(FolPool, PointUpdateCounts) {
    Interpretation i;
    i.add_sort(Sort{"A", {"0", "1"}, false});
    i.add_function("u", {"A"}, "bool");
    EXPECT_EQ(fol_endo_pool(i).size(), 4u);
    EXPECT_EQ(fol_endo_pool(partner_table(false)).size(), 18u);
    EXPECT_TRUE(fol_endo_pool(partner_table(false), std::set<std::string>{}).empty());
}

TEST(FolPool, PointUpdateChangesExactlyItsCell) {
    auto i = partner_table(false);
    for (const auto& e : fol_endo_pool(i)) {
        auto j = e(i);
        int diffs = 0;
        for (std::uint32_t f = 0; f < i.functions().size(); ++f)
            for (std::uint32_t off = 0; off < i.rows(f); ++off)
                if (i.read(Cell{f, off}) != j.read(Cell{f, off})) {
                    ++diffs;
                    EXPECT_EQ((Cell{f, off}), e.writes()[0].cell);
                }
        EXPECT_LE(diffs, 1);
    }
}

TEST(FolPool, CommuteIffDifferentCell) {
    auto i = partner_table(false);
    auto pool = fol_endo_pool(i);
    for (const auto& a : pool)
        for (const auto& b : pool) {
            const bool same_cell = a.writes()[0].cell == b.writes()[0].cell;
            EXPECT_EQ(a.overlaps(b), same_cell);
            if (!same_cell) {
                EXPECT_EQ(a(b(i)), b(a(i)));
            }
        }
}

TEST(FolPool, ColourAndEdgeMacros) {
    auto inst = parse_fol_instance(slurp("graph.json"));
    auto colours = colour_change_pool(inst.interpretation, "V", {"q1", "q2", "q3"});
    EXPECT_EQ(colours.size(), 15u);
    auto it = std::find_if(colours.begin(), colours.end(),
                           [](const auto& e) { return e.key().starts_with("colour(5,q2)"); });
    ASSERT_NE(it, colours.end());
    EXPECT_EQ(it->key(), "colour(5,q2){q1(5)=F,q2(5)=T,q3(5)=F}");

    auto edges = edge_change_pool(inst.interpretation, "V", "p");
    EXPECT_EQ(edges.size(), 30u);
    auto cut = std::find_if(edges.begin(), edges.end(), [](const auto& e) { return e.key().starts_with("edge(4,5)=F"); });
    ASSERT_NE(cut, edges.end());
    EXPECT_EQ(cut->key(), "edge(4,5)=F{p(4,5)=F,p(5,4)=F}");
}

TEST(FolPool, EdgeMacrosOnThreeVertices) {
    Interpretation i;
    i.add_sort(Sort{"V", {"1", "2", "3"}, false});
    i.add_function("p", {"V", "V"}, "bool");
    auto edges = edge_change_pool(i, "V", "p");
    EXPECT_EQ(edges.size(), 12u);
    std::size_t singletons = 0;
    for (const auto& e : edges) singletons += e.writes().size() == 1;
    EXPECT_EQ(singletons, 6u);
}

TEST(FolPool, EdgeMacrosPreserveSymmetry) {
    gen::Rng rng(23);
    auto sym = parse_formula("forall x in V (forall y in V (p(x, y) -> p(y, x)))");
    for (int round = 0; round < 30; ++round) {
        Interpretation i;
        const int n = gen::uniform(rng, 1, 4);
        Sort v{"V", {}, false};
        for (int k = 0; k < n; ++k) v.elements.push_back(std::to_string(k));
        i.add_sort(v);
        i.add_function("p", {"V", "V"}, "bool");
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b)
                if (gen::coin(rng)) {
                    i.set("p", {std::to_string(a), std::to_string(b)}, "T");
                    i.set("p", {std::to_string(b), std::to_string(a)}, "T");
                }
        ASSERT_TRUE(eval_fol(sym, i));
        for (const auto& e : edge_change_pool(i, "V", "p")) ASSERT_TRUE(eval_fol(sym, e(i))) << e.key();
    }
}

TEST(FolPool, ColourChangeKeepsExactlyOneColour) {
    auto inst = parse_fol_instance(slurp("graph.json"));
    auto one = parse_formula(
        "forall x in V ((q1(x) & !q2(x) & !q3(x)) | (!q1(x) & q2(x) & !q3(x)) | (!q1(x) & !q2(x) & q3(x)))");
    ASSERT_TRUE(eval_fol(one, inst.interpretation));
    for (const auto& e : colour_change_pool(inst.interpretation, "V", {"q1", "q2", "q3"}))
        EXPECT_TRUE(eval_fol(one, e(inst.interpretation))) << e.key();
}

TEST(FolPool, MacroAppliesAllMembersAtOnce) {
    auto i = partner_table(false);
    std::vector<Endomorphism> parts{point_update(i, "p", {"2", "0"}, "T"), point_update(i, "p", {"0", "2"}, "T")};
    auto m = macro_endo("pair", parts);
    EXPECT_EQ(m(i), parts[1](parts[0](i)));
    auto single = macro_endo("one", {&parts[0], 1});
    EXPECT_EQ(single(i), parts[0](i));
    parts.push_back(point_update(i, "p", {"2", "0"}, "F"));
    EXPECT_THROW(macro_endo("clash", parts), IllDefinedTransformation);
}

TEST(FolRepair, PartnerExampleAsWritten) {
    auto i = partner_table(false);
    auto phi = compiled(parse_formula(kPartner), i);
    auto r = enumerate_prime_repairs(phi, i, fol_endo_pool(i));
    EXPECT_EQ(keys(r.repairs), (std::vector<std::string>{"{p(1,0)=T, p(2,0)=T}", "{p(1,0)=T, p(2,1)=T}",
                                                         "{p(1,2)=T, p(2,0)=T}", "{p(1,2)=T, p(2,1)=T}"}));
    EXPECT_EQ(r.repairs, oracle_prime_repairs(phi, i, fol_endo_pool(i)));
}

TEST(FolRepair, PartnerExampleWhereOnlyTwoLacksAPartner) {
    auto i = partner_table(true);
    auto phi = compiled(parse_formula(kPartner), i);
    auto r = enumerate_prime_repairs(phi, i, fol_endo_pool(i));
    EXPECT_EQ(keys(r.repairs), (std::vector<std::string>{"{p(2,0)=T}", "{p(2,1)=T}"}));
}

TEST(FolRepair, GraphColouringMatchesOracleAndGolden) {
    auto inst = parse_fol_instance(slurp("graph.json"));
    const auto& sigma = inst.interpretation;
    auto phi = compiled(inst.formula, sigma);
    ASSERT_FALSE(phi(sigma));

    auto pool = colour_change_pool(sigma, "V", {"q1", "q2", "q3"});
    auto edges = edge_change_pool(sigma, "V", "p");
    pool.insert(pool.end(), edges.begin(), edges.end());
    ASSERT_EQ(pool.size(), 45u);

    // No-ops and edge additions never occur in a prime repair; dropping them brings the
    // pool within reach of the oracle.
    const std::regex addition(R"(^edge\([^)]*\)=T)");
    std::vector<Endomorphism> reduced;
    for (const auto& e : pool)
        if (!is_identity_on(e, sigma) && !std::regex_search(e.key(), addition)) reduced.push_back(e);
    ASSERT_EQ(reduced.size(), 15u);

    auto oracle = oracle_prime_repairs(phi, sigma, reduced);
    auto enumerated = enumerate_prime_repairs(phi, sigma, reduced);
    EXPECT_EQ(enumerated.repairs, oracle);

    std::vector<std::string> golden;
    std::istringstream lines(slurp("graph_repairs.txt"));
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) golden.push_back(line);
    EXPECT_EQ(keys(oracle), golden);

    // The full pool agrees on every cardinality the oracle's answer reaches, and one beyond.
    SearchConfig bounded;
    bounded.max_cardinality = oracle.back().size() + 1;
    EXPECT_EQ(enumerate_prime_repairs(phi, sigma, pool, bounded).repairs, oracle);

    for (const auto& t : oracle) EXPECT_TRUE(phi(apply_transformation(t, sigma))) << t.to_string();
    EXPECT_EQ(gen::check_prime_repairs(oracle, phi, sigma), "");
}

TEST(FolInstanceFile, SchemaErrorsCarryPaths) {
    try {
        parse_fol_instance(R"({"sorts": {"A": ["0"]}, "functions": [{"name": "f", "args": ["A"], "image": "A",
                                 "table": []}], "formula": "true"})");
        FAIL() << "expected a schema error";
    } catch (const SchemaError& e) {
        EXPECT_NE(e.path().find("functions"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_fol_instance(R"({"sorts": {"A": ["0", "0"]}, "functions": [], "formula": "true"})"),
                 SchemaError);
    EXPECT_THROW(parse_fol_instance(R"({"sorts": {"A": ["0"]}, "functions": [{"name": "p", "args": ["B"],
                                       "image": "bool", "table": []}], "formula": "true"})"),
                 SchemaError);
    EXPECT_THROW(parse_fol_instance(R"({"sorts": {"A": ["0"]}, "functions": [], "formula": "forall x in ("})"),
                 ParseError);
}

TEST(FolInstanceFile, RoundTripsThroughJson) {
    auto inst = parse_fol_instance(slurp("partner.json"));
    auto again = parse_fol_instance(fol_instance_to_json(inst.interpretation, inst.formula));
    EXPECT_EQ(again.interpretation, inst.interpretation);
    EXPECT_EQ(again.formula.to_string(), inst.formula.to_string());
}
