#include "clickfill/mock_backends.hpp"

#include "clickfill/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <deque>

namespace clickfill {

RegionGrowSegmenter::RegionGrowSegmenter(int tolerance, std::string id)
    : tolerance_(tolerance), descriptor_{BackendRole::Segmenter, std::move(id), true, false, 1} {}

Mask RegionGrowSegmenter::grow(const Image& image, int x, int y) const {
    Mask region(image.extent());
    const Rgb seed = image.at(x, y);
    auto similar = [&](int px, int py) {
        const Rgb c = image.at(px, py);
        for (int k = 0; k < 3; ++k) {
            if (std::abs(int(c[k]) - int(seed[k])) > tolerance_) return false;
        }
        return true;
    };

    std::deque<std::pair<int, int>> queue{{x, y}};
    region.set(x, y, true);
    while (!queue.empty()) {
        auto [cx, cy] = queue.front();
        queue.pop_front();
        constexpr std::array<std::pair<int, int>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        for (auto [dx, dy] : steps) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (!image.extent().contains(nx, ny) || region.at(nx, ny) || !similar(nx, ny)) continue;
            region.set(nx, ny, true);
            queue.emplace_back(nx, ny);
        }
    }
    return region;
}

std::vector<SegmentationCandidate> RegionGrowSegmenter::segment(const Image& image, const ClickPrompt& clicks) const {
    Mask keep(image.extent());
    Mask carve(image.extent());
    auto merge = [](Mask& into, const Mask& from) {
        for (int y = 0; y < into.height(); ++y) {
            for (int x = 0; x < into.width(); ++x) {
                if (from.at(x, y)) into.set(x, y, true);
            }
        }
    };
    for (const auto& p : clicks.points) {
        merge(p.label == PointLabel::Positive ? keep : carve, grow(image, p.x, p.y));
    }
    for (int y = 0; y < keep.height(); ++y) {
        for (int x = 0; x < keep.width(); ++x) {
            if (carve.at(x, y)) keep.set(x, y, false);
        }
    }
    if (keep.empty()) return {};
    return {SegmentationCandidate{std::move(keep), 1.0}};
}

HarmonicFillInpainter::HarmonicFillInpainter() : HarmonicFillInpainter(Options{}) {}

HarmonicFillInpainter::HarmonicFillInpainter(Options options, std::string id)
    : options_(options), descriptor_{BackendRole::Inpainter, std::move(id), true, false, 1} {}

Image HarmonicFillInpainter::inpaint(const Image& image, const Mask& mask) const {
    const int w = image.width();
    const int h = image.height();
    const std::size_t n = image.extent().area();

    // Working copy in double; unknowns are the masked pixels.
    std::vector<double> value(n * 3);
    for (std::size_t i = 0; i < n * 3; ++i) value[i] = image.pixels()[i];

    std::vector<std::uint32_t> unknowns;
    std::vector<std::array<std::int64_t, 4>> neighbours;
    std::array<double, 3> ring_sum{0, 0, 0};
    std::size_t ring_count = 0;
    std::vector<std::uint8_t> on_ring(n, 0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            const std::size_t idx = std::size_t(y) * w + x;
            std::array<std::int64_t, 4> nb{-1, -1, -1, -1};
            if (x > 0) nb[0] = std::int64_t(idx - 1);
            if (x + 1 < w) nb[1] = std::int64_t(idx + 1);
            if (y > 0) nb[2] = std::int64_t(idx - w);
            if (y + 1 < h) nb[3] = std::int64_t(idx + w);
            for (auto j : nb) {
                if (j < 0) continue;
                const auto u = std::size_t(j);
                if (mask.bits()[u] || on_ring[u]) continue;
                on_ring[u] = 1;
                ++ring_count;
                for (int c = 0; c < 3; ++c) ring_sum[c] += value[u * 3 + c];
            }
            unknowns.push_back(static_cast<std::uint32_t>(idx));
            neighbours.push_back(nb);
        }
    }
    if (ring_count == 0) {
        throw Error(ErrorCode::BackendFailure, "harmonic fill needs at least one known boundary pixel");
    }

    for (auto idx : unknowns) {
        for (int c = 0; c < 3; ++c) value[std::size_t(idx) * 3 + c] = ring_sum[c] / double(ring_count);
    }

    std::vector<double> next(unknowns.size() * 3);
    for (int iter = 0; iter < options_.max_iterations; ++iter) {
        double max_change = 0.0;
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            std::array<double, 3> acc{0, 0, 0};
            int deg = 0;
            for (auto j : neighbours[k]) {
                if (j < 0) continue;
                ++deg;
                for (int c = 0; c < 3; ++c) acc[c] += value[std::size_t(j) * 3 + c];
            }
            for (int c = 0; c < 3; ++c) {
                const double v = acc[c] / deg;
                max_change = std::max(max_change, std::abs(v - value[std::size_t(unknowns[k]) * 3 + c]));
                next[k * 3 + c] = v;
            }
        }
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            for (int c = 0; c < 3; ++c) value[std::size_t(unknowns[k]) * 3 + c] = next[k * 3 + c];
        }
        if (max_change < options_.tolerance) break;
    }

    std::vector<std::uint8_t> out(image.pixels().begin(), image.pixels().end());
    for (auto idx : unknowns) {
        for (int c = 0; c < 3; ++c) {
            const std::size_t i = std::size_t(idx) * 3 + c;
            out[i] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(value[i]), 0, 255));
        }
    }
    return Image(image.extent(), std::move(out));
}

std::uint64_t stable_hash(std::string_view prompt, std::uint64_t seed) noexcept {
    constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t h = kOffset;
    for (unsigned char ch : prompt) {
        h ^= ch;
        h *= kPrime;
    }
    for (int i = 0; i < 8; ++i) {
        h ^= (seed >> (8 * i)) & 0xffU;
        h *= kPrime;
    }
    return h;
}

Rgb pattern_color(std::string_view prompt, std::uint64_t seed) noexcept {
    const std::uint64_t h = stable_hash(prompt, seed);
    return {std::uint8_t(h & 0xff), std::uint8_t((h >> 8) & 0xff), std::uint8_t((h >> 16) & 0xff)};
}

PatternGenerator::PatternGenerator(std::string id)
    : descriptor_{BackendRole::Generator, std::move(id), true, false, 8} {}

Image PatternGenerator::generate(const Image& image, const Mask& mask, std::string_view prompt,
                                 std::uint64_t seed) const {
    const Rgb color = pattern_color(prompt, seed);
    Image out = image;
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            if (mask.at(x, y)) out.set(x, y, color);
        }
    }
    return out;
}

}  // namespace clickfill
