#include "doctest.h"

#include <random>

#include "dustclear/iqa.hpp"
#include "support.hpp"

using namespace dustclear;
using namespace dustclear::iqa;

namespace {

RgbF gray(const PlaneF& p) { return RgbF(p, p, p); }

PlaneF step(int w, int h, int at, double lo, double hi) {
    PlaneF p(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) p(x, y) = x < at ? lo : hi;
    }
    return p;
}

EdgeMap with_count(std::size_t n, std::size_t total = 400) {
    EdgeMap m;
    m.visible.assign(total, false);
    for (std::size_t i = 0; i < n; ++i) m.visible[i] = true;
    return m;
}

// Smooth textured scene with values in [0.25, 0.75].
PlaneF texture(int w, int h) {
    PlaneF p(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            p(x, y) = 0.5 + 0.2 * std::sin(x * 0.7) * std::cos(y * 0.45) + 0.05 * ((x / 5 + y / 7) % 2);
        }
    }
    return p;
}

}  // namespace

TEST_CASE("visible_edges") {
    const EdgeMap none = visible_edges(RgbF(16, 16, 0.4));
    CHECK(none.count() == 0);

    const EdgeMap s = visible_edges(gray(step(16, 16, 8, 0.0, 1.0)));
    CHECK(s.count() > 0);
    CHECK(s.count() <= 3 * 16);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            if (s.visible[static_cast<std::size_t>(y) * 16 + x]) {
                CHECK(x >= 6);
                CHECK(x <= 9);
                CHECK(s.grad(x, y) > 0.0);
            }
        }
    }

    const EdgeMap faint = visible_edges(gray(step(16, 16, 8, 0.5, 0.51)));
    CHECK(faint.count() == 0);
}

TEST_CASE("rate_e") {
    CHECK(rate_e(with_count(50), with_count(50)) == 0.0);
    CHECK(rate_e(with_count(100), with_count(300)) == 2.0);
    CHECK_THROWS_AS(rate_e(with_count(0), with_count(10)), MetricError);
}

TEST_CASE("rate_rbar") {
    const RgbF img = gray(texture(40, 30));
    CHECK(rate_rbar(img, img, visible_edges(img)) == 1.0);

    PlaneF stretched = texture(40, 30);
    double mean = 0.0;
    for (double s : stretched.samples()) mean += s;
    mean /= static_cast<double>(stretched.size());
    for (auto& s : stretched.samples()) s = mean + 2.0 * (s - mean);
    const RgbF restored = gray(stretched);
    CHECK(rate_rbar(img, restored, visible_edges(restored)) == doctest::Approx(2.0).epsilon(1e-3));

    // Two edges with ratios 1 and 4.
    EdgeMap orig;
    orig.grad = PlaneF(2, 1, std::vector<double>{0.5, 0.25});
    EdgeMap rest;
    rest.grad = PlaneF(2, 1, std::vector<double>{0.5, 1.0});
    rest.visible = {true, true};
    CHECK(rate_rbar_detail(orig, rest).r_bar == doctest::Approx(2.0).epsilon(1e-12));

    const RgbF flat(40, 30, 0.3);
    CHECK_THROWS_AS(rate_rbar(img, flat, visible_edges(flat)), MetricError);
}

TEST_CASE("rate_rbar guards vanishing original gradients") {
    EdgeMap orig;
    orig.grad = PlaneF(1, 1, 0.0);
    EdgeMap rest;
    rest.grad = PlaneF(1, 1, 2e-6);
    rest.visible = {true};
    const RbarResult r = rate_rbar_detail(orig, rest);
    CHECK(r.guarded == 1);
    CHECK(r.r_bar == doctest::Approx(2.0));
}

TEST_CASE("rate_sigma") {
    const RgbF orig(10, 10, 0.5);
    CHECK(rate_sigma(orig, orig) == 0.0);
    CHECK(rate_sigma(orig, RgbF(10, 10, 1.0)) == 1.0);

    RgbF half(10, 10, 0.5);
    for (int y = 0; y < 5; ++y) {
        for (int x = 0; x < 10; ++x) half.r(x, y) = half.g(x, y) = half.b(x, y) = 0.0;
    }
    CHECK(rate_sigma(orig, half) == 0.5);

    // Pre-existing saturation is not charged to the restoration.
    CHECK(rate_sigma(RgbF(10, 10, 1.0), RgbF(10, 10, 1.0)) == 0.0);
    // A single clipped channel is not saturation.
    RgbF partial(10, 10, 0.5);
    for (auto& s : partial.r.samples()) s = 1.0;
    CHECK(rate_sigma(orig, partial) == 0.0);
}

TEST_CASE("assess composes the metrics") {
    const RgbF img = gray(texture(48, 32));
    const QualityReport same = assess(img, img);
    REQUIRE(same.e.has_value());
    REQUIRE(same.r_bar.has_value());
    CHECK(*same.e == 0.0);
    CHECK(*same.r_bar == 1.0);
    CHECK(same.sigma == 0.0);
    CHECK(same.n_o == same.n_r);
    CHECK(same.errors.empty());

    const QualityReport blank = assess(RgbF(16, 16, 0.5), RgbF(16, 16, 0.5));
    CHECK_FALSE(blank.e.has_value());
    CHECK_FALSE(blank.r_bar.has_value());
    CHECK(blank.errors.size() == 2);
    CHECK(blank.sigma == 0.0);
}

TEST_CASE("sigma and e are permutation invariant") {
    std::mt19937_64 rng(41);
    const RgbF a = testing::random_rgb(20, 20, rng);
    const RgbF b = testing::random_rgb(20, 20, rng);
    RgbF ra = a;
    RgbF rb = b;
    for (RgbF* img : {&ra, &rb}) {
        for (PlaneF* p : {&img->r, &img->g, &img->b}) {
            std::reverse(p->samples().begin(), p->samples().end());
        }
    }
    CHECK(rate_sigma(a, b) == rate_sigma(ra, rb));
    // A 180-degree rotation maps the edge rule onto itself.
    CHECK(visible_edges(a).count() == visible_edges(ra).count());
}
