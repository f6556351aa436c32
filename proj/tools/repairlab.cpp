// repairlab: check structures against expressions and enumerate their prime repairs.
//
//   repairlab check  --spec align.cp --snapshot page.json
//   repairlab repair --instance graph.json --pool colour --pool edge --format text
//   repairlab oracle --spec align.cp --snapshot page.json --pool displace-h
//
// Exit status: 0 when the expression holds (check) or a repair was found (repair,
// oracle); 1 when it does not hold or no repair exists; 2 on any error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "repairlab/core/error.hpp"
#include "repairlab/core/repair.hpp"
#include "repairlab/fol/formula.hpp"
#include "repairlab/fol/instance.hpp"
#include "repairlab/fol/pools.hpp"
#include "repairlab/layout/omega.hpp"
#include "repairlab/layout/snapshot.hpp"
#include "repairlab/layout/spec.hpp"
#include "repairlab/layout/translate.hpp"
#include "repairlab/prop/prop.hpp"
#include "repairlab/report/report.hpp"

namespace {

using namespace repairlab;

constexpr std::size_t kDefaultPoolCap = 64;

struct Options {
    std::string spec_path;
    std::string snapshot_path;
    std::string instance_path;
    std::string kind;
    std::string format = "json";
    std::vector<std::string> pools;
    std::string values = "observed";
    std::optional<std::size_t> max_card;
    std::optional<std::size_t> max_count;
    bool force = false;
    bool drop_noop = false;
    std::vector<std::string> exclude;
    bool serial = false;
};

enum class Command { check, repair, oracle };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t pool_cap() {
    if (const char* env = std::getenv("REPAIRLAB_POOL_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw Error(std::string("REPAIRLAB_POOL_CAP is not a number: ") + env);
        }
    }
    return kDefaultPoolCap;
}

/// Decides prop, fol or layout from the flags and, failing that, from the instance's shape.
std::string infer_kind(const Options& o, const std::string& instance_text) {
    if (!o.kind.empty()) return o.kind;
    if (!o.snapshot_path.empty()) return "layout";
    nlohmann::json j = nlohmann::json::parse(instance_text, nullptr, false);
    if (j.is_object()) {
        if (j.contains("root")) return "layout";
        if (j.contains("valuation")) return "prop";
        if (j.contains("sorts")) return "fol";
    }
    throw Error("cannot tell the instance kind of " + o.instance_path + "; pass --kind prop|fol|layout");
}

void require_pools(const std::string& kind, const std::vector<std::string>& pools,
                   const std::set<std::string>& allowed) {
    for (const auto& p : pools)
        if (!allowed.count(p)) throw Error("--pool " + p + " does not apply to " + kind + " instances");
}

class Runner {
public:
    Runner(Command cmd, Options o) : cmd_(cmd), o_(std::move(o)) {}

    int run() {
        if (o_.format != "json" && o_.format != "text") throw Error("--format must be json or text");
        const std::string spec_text = o_.spec_path.empty() ? std::string() : read_file(o_.spec_path);
        const std::string subject_path = o_.snapshot_path.empty() ? o_.instance_path : o_.snapshot_path;
        if (subject_path.empty()) throw Error("one of --snapshot or --instance is required");
        const std::string subject = read_file(subject_path);
        const std::string kind = infer_kind(o_, subject);
        digest_ = report::digest({kind, spec_text, subject});

        if (kind == "prop") return run_prop(spec_text, subject);
        if (kind == "fol") return run_fol(spec_text, subject);
        if (kind == "layout") return run_layout(spec_text, subject);
        throw Error("unknown kind '" + kind + "'");
    }

private:
    int run_prop(const std::string& spec_text, const std::string& subject) {
        auto inst = prop::parse_prop_instance(subject);
        if (!spec_text.empty()) inst.formula = prop::parse_formula(spec_text);
        for (const auto& v : inst.formula.variables())
            if (!inst.valuation.contains(v)) throw Error("formula variable '" + v + "' has no value");
        const auto phi = inst.formula;
        Spec<prop::Valuation> spec = [phi](const prop::Valuation& s) { return prop::eval_prop(phi, s); };
        if (cmd_ == Command::check) return print_check("prop", spec(inst.valuation));

        auto pools = o_.pools.empty() ? std::vector<std::string>{"point"} : o_.pools;
        require_pools("prop", pools, {"point"});
        return search("prop", spec, inst.valuation, prop::prop_endo_pool(inst.valuation));
    }

    int run_fol(const std::string& spec_text, const std::string& subject) {
        auto inst = fol::parse_fol_instance(subject);
        if (!spec_text.empty()) inst.formula = fol::parse_formula(spec_text);
        auto compiled = std::make_shared<fol::CompiledFormula>(inst.formula, inst.interpretation);
        Spec<fol::Interpretation> spec = [compiled](const fol::Interpretation& i) { return compiled->eval(i); };
        if (cmd_ == Command::check) return print_check("fol", spec(inst.interpretation));

        auto pools = o_.pools.empty() ? std::vector<std::string>{"point"} : o_.pools;
        require_pools("fol", pools, {"point", "colour", "edge"});
        std::vector<Endomorphism> pool;
        for (const auto& p : std::set<std::string>(pools.begin(), pools.end())) {
            std::vector<Endomorphism> part;
            if (p == "point") {
                part = fol::fol_endo_pool(inst.interpretation);
            } else {
                if (!inst.graph) throw Error("--pool " + p + " needs a \"graph\" section in the instance");
                part = p == "colour" ? fol::colour_change_pool(inst.interpretation, inst.graph->vertices,
                                                               inst.graph->colours)
                                     : fol::edge_change_pool(inst.interpretation, inst.graph->vertices,
                                                             inst.graph->adjacency);
            }
            pool.insert(pool.end(), part.begin(), part.end());
        }
        return search("fol", spec, inst.interpretation, std::move(pool));
    }

    int run_layout(const std::string& spec_text, const std::string& subject) {
        if (o_.spec_path.empty()) throw Error("layout instances need --spec");
        const auto t = layout::ingest_snapshot(subject);
        const auto phi = layout::parse_spec(spec_text);
        for (const auto& r : t.rounded()) std::cerr << "note: rounded box of " << r << " to whole pixels\n";
        if (cmd_ == Command::check) return print_layout_check(t, phi);

        auto pools = o_.pools.empty() ? std::vector<std::string>{"displace-h"} : o_.pools;
        require_pools("layout", pools, {"displace-h", "displace-v", "resize"});
        std::vector<layout::BoxPool> kinds;
        for (const auto& p : std::set<std::string>(pools.begin(), pools.end())) {
            if (p == "displace-h") kinds.push_back(layout::BoxPool::displace_h);
            if (p == "displace-v") kinds.push_back(layout::BoxPool::displace_v);
            if (p == "resize") {
                kinds.push_back(layout::BoxPool::resize_h);
                kinds.push_back(layout::BoxPool::resize_v);
            }
        }
        auto problem = layout::build_layout_problem(t, phi, kinds, layout::ValuePolicy::parse(o_.values));
        auto compiled = std::make_shared<fol::CompiledFormula>(problem.model.formula, problem.model.interpretation);
        Spec<fol::Interpretation> spec = [compiled](const fol::Interpretation& i) { return compiled->eval(i); };
        return search("layout", spec, problem.model.interpretation, std::move(problem.pool));
    }

    template <Structure S>
    int search(const std::string& kind, const Spec<S>& spec, const S& sigma, std::vector<Endomorphism> pool) {
        SearchConfig config;
        config.max_cardinality = o_.max_card;
        config.max_repairs = o_.max_count;
        config.policy = o_.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel;

        std::vector<std::regex> excluded;
        for (const auto& e : o_.exclude) {
            try {
                excluded.emplace_back(e);
            } catch (const std::regex_error&) {
                throw Error("--exclude: bad regular expression '" + e + "'");
            }
        }
        config.endo_filter = [&, drop_noop = o_.drop_noop](const Endomorphism& e) {
            if (drop_noop && is_identity_on(e, sigma)) return true;
            for (const auto& re : excluded)
                if (std::regex_search(e.key(), re)) return true;
            return false;
        };
        // Apply the filter up front so the cap and the oracle guard see the real pool.
        std::erase_if(pool, config.endo_filter);
        config.endo_filter = nullptr;
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        const std::size_t pool_size = pool.size();

        std::vector<Transformation> repairs;
        Exhaustion reason = Exhaustion::complete;
        if (cmd_ == Command::oracle) {
            repairs = oracle_prime_repairs(spec, sigma, std::move(pool));
        } else {
            if (pool_size > pool_cap() && !o_.force) throw PoolTooLarge(pool_size, pool_cap());
            auto result = enumerate_prime_repairs(spec, sigma, std::move(pool), std::move(config));
            repairs = std::move(result.repairs);
            reason = result.reason;
        }

        auto r = report::make_report(digest_, kind, pool_size, repairs, reason, sigma);
        std::cout << (o_.format == "json" ? report::to_json(r) : report::to_text(r));
        return repairs.empty() ? 1 : 0;
    }

    int print_check(const std::string& kind, bool value) {
        if (o_.format == "json")
            std::cout << nlohmann::json{{"kind", kind}, {"digest", digest_}, {"value", value}}.dump(2) << "\n";
        else
            std::cout << prop::truth_label(value) << "\n";
        return value ? 0 : 1;
    }

    int print_layout_check(const layout::DomSnapshot& t, const layout::LayoutSpec& phi) {
        const auto v = layout::omega(t, phi);
        if (o_.format == "json") {
            nlohmann::json out = {{"kind", "layout"},
                                  {"digest", digest_},
                                  {"value", std::string(layout::to_string(v.value))},
                                  {"truth_witness", nlohmann::json::parse(layout::witness_to_json(t, v.truth_witness))},
                                  {"falsehood_witness",
                                   nlohmann::json::parse(layout::witness_to_json(t, v.falsehood_witness))}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << layout::to_string(v.value) << "\n";
            const auto& w = v.value == layout::Truth::top ? v.truth_witness : v.falsehood_witness;
            std::cout << (v.value == layout::Truth::top ? "truth" : "falsehood") << " witness:\n"
                      << layout::witness_to_text(t, w, 1);
        }
        return v.value == layout::Truth::top ? 0 : 1;
    }

    Command cmd_;
    Options o_;
    std::string digest_;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--spec", o.spec_path, "expression file: layout spec, or a formula overriding the instance's");
    cmd->add_option("--snapshot", o.snapshot_path, "page snapshot (JSON)");
    cmd->add_option("--instance", o.instance_path, "propositional, first-order or snapshot instance (JSON)");
    cmd->add_option("--kind", o.kind, "instance kind")->check(CLI::IsMember({"prop", "fol", "layout"}));
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

void add_search(CLI::App* cmd, Options& o) {
    cmd->add_option("--pool", o.pools, "point|colour|edge|displace-h|displace-v|resize (repeatable)")
        ->check(CLI::IsMember({"point", "colour", "edge", "displace-h", "displace-v", "resize"}));
    cmd->add_option("--values", o.values, "layout values: observed, grid:<step> or list:<v1,v2,...>");
    cmd->add_flag("--drop-noop", o.drop_noop, "drop endomorphisms that leave the instance unchanged");
    cmd->add_option("--exclude", o.exclude, "drop endomorphisms whose key matches this regex (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Find the prime repairs of structures that violate an expression"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "evaluate the expression; exit 0 if it holds, 1 if not");
    add_common(check, o);

    auto* repair = app.add_subcommand("repair", "enumerate prime repairs by increasing cardinality");
    add_common(repair, o);
    add_search(repair, o);
    repair->add_option("--max-card", o.max_card, "largest repair cardinality to try");
    repair->add_option("--max-count", o.max_count, "stop after this many repairs");
    repair->add_flag("--force", o.force, "allow pools above the safety cap (REPAIRLAB_POOL_CAP, default 64)");
    repair->add_flag("--serial", o.serial, "check candidates one at a time");

    auto* oracle = app.add_subcommand("oracle", "brute-force prime repairs (pools of at most 20)");
    add_common(oracle, o);
    add_search(oracle, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Command cmd = check->parsed() ? Command::check : repair->parsed() ? Command::repair : Command::oracle;
    try {
        return Runner(cmd, o).run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
