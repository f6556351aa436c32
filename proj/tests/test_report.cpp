#include <gtest/gtest.h>

#include "repairlab/core/error.hpp"
#include "repairlab/core/repair.hpp"
#include "repairlab/prop/prop.hpp"
#include "repairlab/report/report.hpp"

using namespace repairlab;
using namespace repairlab::report;

namespace {

RepairReport implies_report() {
    auto inst = prop::parse_prop_instance(R"({"valuation": {"a": true, "b": false}, "formula": "a -> b"})");
    Spec<prop::Valuation> phi = [f = inst.formula](const prop::Valuation& s) { return prop::eval_prop(f, s); };
    auto pool = prop::prop_endo_pool(inst.valuation);
    auto r = enumerate_prime_repairs(phi, inst.valuation, pool);
    return make_report(digest({"prop", "a -> b"}), "prop", pool.size(), r.repairs, r.reason, inst.valuation);
}

}  // namespace

TEST(Report, DescribesOldAndNewValues) {
    auto r = implies_report();
    ASSERT_EQ(r.repairs.size(), 2u);
    EXPECT_EQ(r.pool_size, 4u);
    EXPECT_TRUE(r.exhausted);
    EXPECT_EQ(r.reason, "complete");
    const auto& first = r.repairs[0];
    EXPECT_EQ(first.cardinality, 1u);
    ASSERT_EQ(first.endomorphisms.size(), 1u);
    EXPECT_EQ(first.endomorphisms[0].key, "a=F");
    EXPECT_EQ(first.endomorphisms[0].changes, (std::vector<ValueChange>{{"a", {}, "T", "F"}}));
}

TEST(Report, JsonRoundTrips) {
    auto r = implies_report();
    auto text = to_json(r);
    EXPECT_EQ(report_from_json(text), r);
    EXPECT_EQ(to_json(report_from_json(text)), text);

    RepairReport empty{"00", "fol", 0, {}, false, "max_repairs"};
    EXPECT_EQ(report_from_json(to_json(empty)), empty);
}

TEST(Report, MalformedJsonNamesThePath) {
    EXPECT_THROW(report_from_json("["), SchemaError);
    try {
        report_from_json(R"({"digest": "x", "kind": "prop", "pool_size": 1, "exhausted": true, "reason": "complete",
                             "repairs": [{"cardinality": 1, "endomorphisms": [{"key": "a=F"}]}]})");
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.path(), "$.repairs[0].endomorphisms[0]");
    }
}

TEST(Report, DigestIsStableAndSeparatesParts) {
    EXPECT_EQ(digest({"prop", "a -> b"}), digest({"prop", "a -> b"}));
    EXPECT_EQ(digest({}), "cbf29ce484222325");
    EXPECT_EQ(digest({"a"}).size(), 16u);
    EXPECT_NE(digest({"ab", "c"}), digest({"a", "bc"}));
    EXPECT_NE(digest({"prop", "a"}), digest({"fol", "a"}));
}

TEST(Report, TextRendering) {
    auto r = implies_report();
    r.digest = "0123456789abcdef";
    EXPECT_EQ(to_text(r),
              "prop instance 0123456789abcdef, pool of 4\n"
              "repair 1 (cardinality 1)\n"
              "  a=F\n"
              "    a: T -> F\n"
              "repair 2 (cardinality 1)\n"
              "  b=T\n"
              "    b: F -> T\n"
              "search ended: complete\n");
    RepairReport none{"0", "fol", 3, {}, false, "max_cardinality"};
    EXPECT_EQ(to_text(none), "fol instance 0, pool of 3\nno repair found\nsearch stopped: max_cardinality\n");
    RepairReport sat{"0", "prop", 0, {RepairEntry{}}, true, "complete"};
    EXPECT_NE(to_text(sat).find("repair 1 (cardinality 0): already satisfied"), std::string::npos);
}
