// Serial reference kernels against their OpenMP twins on random rule sets.

#include <benchmark/benchmark.h>

#include "random_rules.hpp"
#include "secinterop/interop.hpp"
#include "secinterop/intra.hpp"
#include "secinterop/oracle.hpp"
#include "secinterop/rdt.hpp"

using namespace secinterop;
using namespace secinterop::testing;

namespace {

RuleSet bench_rules(std::size_t n) {
    Rng rng(42 + n);
    GenLimits lim{5, n, 200};
    RuleSet rs;
    while (rs.rules.size() < n / 2) rs = random_ruleset(rng, lim);
    return rs;
}

void BM_DetectIntra(benchmark::State& st) {
    RuleSet rs = bench_rules(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(detect_intra(rs));
    st.counters["rules"] = static_cast<double>(rs.rules.size());
}

void BM_DetectIntraSerial(benchmark::State& st) {
    RuleSet rs = bench_rules(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(detect_intra_serial(rs));
    st.counters["rules"] = static_cast<double>(rs.rules.size());
}

AlignedPair bench_pair(std::size_t n) {
    Rng rng(7 + n);
    GenLimits lim{5, n, 200};
    RandomPair rp = random_pair(rng, lim);
    return align(rp.preceding, rp.following);
}

void BM_DetectInter(benchmark::State& st) {
    AlignedPair p = bench_pair(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(detect_inter(p.preceding, p.following));
}

void BM_DetectInterSerial(benchmark::State& st) {
    AlignedPair p = bench_pair(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(detect_inter_serial(p.preceding, p.following));
}

struct EquivalenceInput {
    RuleSet rules;
    RelevantDecisionTree rdt;
    DomainSpace space;
};

EquivalenceInput equivalence_input(std::size_t n) {
    Rng rng(99 + n);
    RuleSet rs = random_ruleset(rng, GenLimits{4, n, 40});
    RelevantDecisionTree rdt = build_rdt(rs);
    DomainSpace space = DomainSpace::for_rules(rs);
    return {rs, rdt, space};
}

void BM_Equivalence(benchmark::State& st) {
    EquivalenceInput in = equivalence_input(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        benchmark::DoNotOptimize(equivalence(in.rdt.tree, in.rules, Semantics::OwnerCapture, in.space));
    }
    st.counters["packets"] = static_cast<double>(in.space.size());
}

void BM_EquivalenceSerial(benchmark::State& st) {
    EquivalenceInput in = equivalence_input(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        benchmark::DoNotOptimize(equivalence_serial(in.rdt.tree, in.rules, Semantics::OwnerCapture, in.space));
    }
    st.counters["packets"] = static_cast<double>(in.space.size());
}

void BM_BuildRdt(benchmark::State& st) {
    RuleSet rs = bench_rules(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(build_rdt(rs));
}

}  // namespace

BENCHMARK(BM_DetectIntra)->Arg(100)->Arg(400);
BENCHMARK(BM_DetectIntraSerial)->Arg(100)->Arg(400);
BENCHMARK(BM_DetectInter)->Arg(100)->Arg(400);
BENCHMARK(BM_DetectInterSerial)->Arg(100)->Arg(400);
BENCHMARK(BM_Equivalence)->Arg(20)->Arg(60);
BENCHMARK(BM_EquivalenceSerial)->Arg(20)->Arg(60);
BENCHMARK(BM_BuildRdt)->Arg(50)->Arg(100);

BENCHMARK_MAIN();
