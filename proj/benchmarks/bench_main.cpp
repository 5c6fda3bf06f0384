#include "clickfill/fidelity.hpp"
#include "clickfill/mask_ops.hpp"
#include "clickfill/mock_backends.hpp"
#include "clickfill/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace clickfill;

namespace {

Mask square_mask(Extent e, int x0, int y0, int side) {
    Mask m(e);
    for (int y = y0; y < y0 + side; ++y)
        for (int x = x0; x < x0 + side; ++x) m.set(x, y, true);
    return m;
}

Image scene_2k() {
    Image img({2048, 1536}, Rgb{70, 150, 90});
    for (int y = 600; y < 900; ++y)
        for (int x = 900; x < 1300; ++x) img.set(x, y, {220, 30, 200});
    return img;
}

void BM_Dilate2K(benchmark::State& state) {
    const Mask m = square_mask({2048, 1536}, 900, 600, 300);
    const int r = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dilate(m, r));
}
BENCHMARK(BM_Dilate2K)->Arg(1)->Arg(15)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FillHoles2K(benchmark::State& state) {
    const Mask m = square_mask({2048, 1536}, 900, 600, 300);
    for (auto _ : state) benchmark::DoNotOptimize(fill_holes(m));
}
BENCHMARK(BM_FillHoles2K)->Unit(benchmark::kMillisecond);

void BM_HarmonicFill(benchmark::State& state) {
    const int n = int(state.range(0));
    Image img({n, n});
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) img.set(x, y, {std::uint8_t(x * 255 / n), std::uint8_t(y * 255 / n), 128});
    const Mask hole = square_mask({n, n}, n / 4, n / 4, n / 2);
    const HarmonicFillInpainter inpainter;
    for (auto _ : state) benchmark::DoNotOptimize(inpainter.inpaint(img, hole));
}
BENCHMARK(BM_HarmonicFill)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Extract2K(benchmark::State& state) {
    const Image img = scene_2k();
    const CropWindow w{0, 0, 2048, 1536, 512, 384};
    for (auto _ : state) benchmark::DoNotOptimize(extract(img, w));
}
BENCHMARK(BM_Extract2K)->Unit(benchmark::kMillisecond);

void BM_Remove2K(benchmark::State& state) {
    const Image img = scene_2k();
    const Pipeline pipeline(BackendRegistry::with_mocks().resolve(PipelineConfig{}));
    const ClickPrompt clicks{{{1000, 700, PointLabel::Positive}}};
    for (auto _ : state) benchmark::DoNotOptimize(pipeline.remove_anything(img, clicks, {}));
}
BENCHMARK(BM_Remove2K)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
