#include <benchmark/benchmark.h>

#include "qform/corpus.hpp"
#include "qform/enumerate.hpp"
#include "qform/isometry.hpp"
#include "qform/local.hpp"
#include "qform/transform.hpp"

namespace {

const qform::GramLattice& q34_3() {
  static const qform::GramLattice g = qform::embedded_corpus().find({34, 3}).gram();
  return g;
}

void BM_VectorsWithNorm(benchmark::State& state) {
  const qform::Int n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(qform::vectors_with_norm(q34_3(), n));
}
BENCHMARK(BM_VectorsWithNorm)->Arg(100)->Arg(1000)->Arg(10000);

void BM_RepresentsPrimitively(benchmark::State& state) {
  qform::Int n = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(qform::represents_primitively(q34_3(), n++));
}
BENCHMARK(BM_RepresentsPrimitively);

void BM_ExceptionScan(benchmark::State& state) {
  const qform::GramLattice g = qform::embedded_corpus().find({95, 1}).gram();
  for (auto _ : state) benchmark::DoNotOptimize(qform::exception_scan(g, state.range(0)));
}
BENCHMARK(BM_ExceptionScan)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_GenusRepresents(benchmark::State& state) {
  const auto& n9 = qform::embedded_corpus().core_gram(qform::CoreLabel::N9);
  qform::Int n = 1;
  for (auto _ : state) benchmark::DoNotOptimize(qform::genus_represents(n9, n++ % 3000 + 1));
}
BENCHMARK(BM_GenusRepresents);

void BM_JordanDecomposition(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qform::jordan_decomposition(q34_3(), 2));
}
BENCHMARK(BM_JordanDecomposition);

void BM_IsometryLambda2(benchmark::State& state) {
  const auto& corpus = qform::embedded_corpus();
  const qform::GramLattice source = corpus.find({104, 1}).gram();
  const qform::GramLattice target = corpus.find({26, 2}).gram();
  for (auto _ : state) benchmark::DoNotOptimize(qform::is_isometric(qform::lambda2(source), target));
}
BENCHMARK(BM_IsometryLambda2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
