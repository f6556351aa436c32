// Serial against parallel prime-repair enumeration.
//
//   bench_enumeration --benchmark_filter=Graph
//
// OMP_NUM_THREADS controls the parallel side. Both policies produce identical output;
// each benchmark checks the repair count against a serial run before timing.

#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "repairlab/core/repair.hpp"
#include "repairlab/fol/formula.hpp"
#include "repairlab/fol/instance.hpp"
#include "repairlab/fol/pools.hpp"
#include "repairlab/layout/snapshot.hpp"
#include "repairlab/layout/spec.hpp"
#include "repairlab/layout/translate.hpp"

using namespace repairlab;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(REPAIRLAB_FIXTURES) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Problem {
    fol::Interpretation sigma;
    Spec<fol::Interpretation> phi;
    std::vector<Endomorphism> pool;
};

Spec<fol::Interpretation> compile(const fol::Formula& f, const fol::Interpretation& sig) {
    auto c = std::make_shared<fol::CompiledFormula>(f, sig);
    return [c](const fol::Interpretation& i) { return c->eval(i); };
}

// Colour changes and edge changes over the five-vertex fixture: 45 endomorphisms.
const Problem& graph() {
    static const Problem p = [] {
        auto inst = fol::parse_fol_instance(slurp("graph.json"));
        auto pool = fol::colour_change_pool(inst.interpretation, inst.graph->vertices, inst.graph->colours);
        auto edges = fol::edge_change_pool(inst.interpretation, inst.graph->vertices, inst.graph->adjacency);
        pool.insert(pool.end(), edges.begin(), edges.end());
        return Problem{inst.interpretation, compile(inst.formula, inst.interpretation), std::move(pool)};
    }();
    return p;
}

// The misaligned list with horizontal moves to every multiple of 20 px.
const Problem& layout_grid() {
    static const Problem p = [] {
        auto t = layout::ingest_snapshot(slurp("menu.json"));
        const layout::BoxPool kinds[] = {layout::BoxPool::displace_h};
        auto problem = layout::build_layout_problem(t, layout::parse_spec(slurp("align.cp")), kinds,
                                                    layout::ValuePolicy::parse("grid:20"));
        auto phi = compile(problem.model.formula, problem.model.interpretation);
        return Problem{problem.model.interpretation, phi, std::move(problem.pool)};
    }();
    return p;
}

void run(benchmark::State& state, const Problem& p, ExecutionPolicy policy) {
    SearchConfig config;
    config.max_cardinality = static_cast<std::size_t>(state.range(0));
    config.policy = policy;
    SearchConfig serial = config;
    serial.policy = ExecutionPolicy::serial;
    const auto expected = enumerate_prime_repairs(p.phi, p.sigma, p.pool, serial).repairs;

    std::size_t found = 0;
    for (auto _ : state) {
        auto r = enumerate_prime_repairs(p.phi, p.sigma, p.pool, config);
        found = r.repairs.size();
        benchmark::DoNotOptimize(r);
    }
    if (found != expected.size()) state.SkipWithError("policies disagree");
    state.counters["pool"] = static_cast<double>(p.pool.size());
    state.counters["repairs"] = static_cast<double>(found);
}

void BM_GraphSerial(benchmark::State& s) { run(s, graph(), ExecutionPolicy::serial); }
void BM_GraphParallel(benchmark::State& s) { run(s, graph(), ExecutionPolicy::parallel); }
void BM_LayoutSerial(benchmark::State& s) { run(s, layout_grid(), ExecutionPolicy::serial); }
void BM_LayoutParallel(benchmark::State& s) { run(s, layout_grid(), ExecutionPolicy::parallel); }

}  // namespace

BENCHMARK(BM_GraphSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LayoutSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LayoutParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
