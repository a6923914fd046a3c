#include "llec/imaging.hpp"
#include "llec/lle.hpp"
#include "llec/segmentation.hpp"
#include "llec/synthetic.hpp"
#include "llec/vq.hpp"

#include <benchmark/benchmark.h>

using namespace llec;

static PointCloud region_cloud(int side)
{
    RegionImageSpec spec;
    spec.width = spec.height = side;
    return image_to_cloud(region_image(spec).image).first;
}

static void BM_Knn(benchmark::State& state)
{
    const PointCloud cloud = region_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(knn(cloud, 4));
    state.SetComplexityN(cloud.size());
}
BENCHMARK(BM_Knn)->Arg(32)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_LleTorus(benchmark::State& state)
{
    const PointCloud frames = torus_dataset(TorusSpec{});
    LleParams params;
    params.d = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_lle(frames, params));
}
BENCHMARK(BM_LleTorus)->Unit(benchmark::kMillisecond);

static void BM_LlecImage(benchmark::State& state)
{
    const PointCloud cloud = region_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(llec_cluster(cloud));
}
BENCHMARK(BM_LlecImage)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Lbg(benchmark::State& state)
{
    const PointCloud cloud = region_cloud(64);
    Initializer init;
    init.n = state.range(0);
    const Codebook start = init_centers(cloud, init);
    for (auto _ : state)
        benchmark::DoNotOptimize(lbg(cloud, start));
}
BENCHMARK(BM_Lbg)->Arg(8)->Arg(25)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
