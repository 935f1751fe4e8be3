#include <benchmark/benchmark.h>

#include "kerncert/bench.hpp"
#include "kerncert/checker.hpp"
#include "kerncert/graph_oracles.hpp"
#include "kerncert/witness.hpp"

using namespace kerncert;

namespace {

void BM_EncodeArrow(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(encode_arrow(3, (int)state.range(0)));
}
BENCHMARK(BM_EncodeArrow)->Arg(2)->Arg(3);

void BM_EncodeColoringKneser(benchmark::State& state) {
    Graph g = build_kneser((int)state.range(0), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(encode_coloring(g, (int)state.range(0) - 3));
}
BENCHMARK(BM_EncodeColoringKneser)->Arg(5)->Arg(7);

void BM_RefuteBaseCase(benchmark::State& state) {
    Formula f = state.range(0) == 0 ? encode_arrow(3, 2) : encode_gs(3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(refute_kernel(f));
}
BENCHMARK(BM_RefuteBaseCase)->Arg(0)->Arg(1);

void BM_PigeonholeEmit(benchmark::State& state) {
    int h = (int)state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(emit_php_refutation(h + 1, h));
}
BENCHMARK(BM_PigeonholeEmit)->Arg(5)->Arg(7);

void BM_CheckPigeonhole(benchmark::State& state) {
    int h = (int)state.range(0);
    Formula f = php_formula(h + 1, h);
    Certificate c = emit_php_refutation(h + 1, h);
    for (auto _ : state) benchmark::DoNotOptimize(check_certificate(f, c));
}
BENCHMARK(BM_CheckPigeonhole)->Arg(5)->Arg(7);

void BM_CrownFind(benchmark::State& state) {
    SplitMix64 rng(9);
    Graph g = random_graph(rng, (int)state.range(0), 0.3);
    Graph comp = g.complement();
    bool has_isolated = false;
    for (int v = 1; v <= comp.num_vertices(); v++) has_isolated |= comp.degree(v) == 0;
    for (auto _ : state) {
        if (!has_isolated) benchmark::DoNotOptimize(find_crown(comp, 3));
    }
}
BENCHMARK(BM_CrownFind)->Arg(20)->Arg(40);

void BM_MaxMatching(benchmark::State& state) {
    SplitMix64 rng(11);
    Graph g = random_graph(rng, (int)state.range(0), 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(max_matching(g));
}
BENCHMARK(BM_MaxMatching)->Arg(20)->Arg(40);

void BM_CertifyVcTriangle(benchmark::State& state) {
    Graph k3(3);
    k3.add_edge(1, 2);
    k3.add_edge(1, 3);
    k3.add_edge(2, 3);
    Instance inst = GraphInstance{ProblemKind::VertexCover, k3, 1};
    for (auto _ : state) benchmark::DoNotOptimize(certify(inst));
}
BENCHMARK(BM_CertifyVcTriangle);

} // namespace

BENCHMARK_MAIN();
