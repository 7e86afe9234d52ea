// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "posecodec/core/error.hpp"
#include "posecodec/core/losses.hpp"
#include "posecodec/core/rng.hpp"

using namespace posecodec;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("orientation loss") {
  const GridSize g{8, 8};
  OrientationMapStack a(2, g, EncodingMode::kOrientation), b(2, g, EncodingMode::kOrientation);
  SUBCASE("equal stacks") {
    const auto l = orientation_loss(a, a);
    CHECK(l.value == 0.0);
    for (double v : l.gradient) CHECK(v == 0.0);
  }
  SUBCASE("one differing pixel") {
    a.set_pixel(1, 3, 4, Vec3(1, 0, 0));
    b.set_pixel(1, 3, 4, Vec3(0, 1, 0));
    CHECK(orientation_loss(a, b).value == 2.0);
  }
  SUBCASE("finite differences") {
    CounterRng rng(40, 1);
    for (auto& v : a.data) v = rng.uniform(-1, 1);
    for (auto& v : b.data) v = rng.uniform(-1, 1);
    const auto l = orientation_loss(a, b);
    double worst = 0.0;
    const double h = 1e-5;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
      auto p = a, m = a;
      p.data[i] += h;
      m.data[i] -= h;
      const double fd = (orientation_loss(p, b).value - orientation_loss(m, b).value) / (2 * h);
      worst = std::max(worst, rel_err(fd, l.gradient[i]));
    }
    CHECK(worst < 1e-4);
  }
  SUBCASE("shape mismatch") {
    OrientationMapStack c(3, g, EncodingMode::kOrientation);
    CHECK_THROWS_AS(orientation_loss(a, c), Error);
  }
}

TEST_CASE("heatmap loss") {
  const GridSize g{8, 8};
  HeatmapStack p(2, g), t(2, g);
  SUBCASE("p = g = 0.5 gives ln 2 per pixel") {
    for (auto& v : p.data) v = 0.5;
    for (auto& v : t.data) v = 0.5;
    // Summed over pixels, averaged over the two maps.
    CHECK(heatmap_loss(p, t).value / 64.0 == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("binary targets predicted exactly") {
    CounterRng rng(41, 1);
    for (std::size_t i = 0; i < p.data.size(); ++i) p.data[i] = t.data[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
    CHECK(heatmap_loss(p, t).value < 1e-10);
  }
  SUBCASE("finite differences away from the clamp") {
    CounterRng rng(42, 1);
    for (auto& v : p.data) v = rng.uniform(0.05, 0.95);
    for (auto& v : t.data) v = rng.uniform();
    const auto l = heatmap_loss(p, t);
    double worst = 0.0;
    const double h = 1e-5;
    for (std::size_t i = 0; i < p.data.size(); ++i) {
      auto a = p, b = p;
      a.data[i] += h;
      b.data[i] -= h;
      const double fd = (heatmap_loss(a, t).value - heatmap_loss(b, t).value) / (2 * h);
      worst = std::max(worst, rel_err(fd, l.gradient[i]));
    }
    CHECK(worst < 1e-4);
  }
  SUBCASE("loss is non-negative") {
    CounterRng rng(43, 1);
    for (auto& v : p.data) v = rng.uniform();
    for (auto& v : t.data) v = rng.uniform();
    CHECK(heatmap_loss(p, t).value >= 0.0);
  }
}

TEST_CASE("total loss") {
  CHECK(LossReport::combine(1.0, 2.0).total == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(LossReport::combine(1.0, 2.0, 0.0).total == 1.0);
  const GridSize g{4, 4};
  OrientationMapStack o(1, g, EncodingMode::kOrientation);
  HeatmapStack h(1, g);
  const auto r = total_loss(o, o, h, h);
  CHECK(r.total < 1e-10);
  CHECK(r.lambda == 0.2);
}
