#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "testutil.hpp"

namespace {

std::vector<tv::QVec> sorted(std::vector<tv::QVec> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("reduced ample inequalities for P1xP1") {
  Gauge g = gauge("p1p1", 3);
  CHECK(sorted(g.ac.L_red) ==
        std::vector<tv::QVec>{qvi({0, 1}), qvi({1, 0})});
  CHECK(sorted(g.ac.nef.facet_normals) ==
        std::vector<tv::QVec>{qvi({0, 1}), qvi({1, 0})});
  CHECK(sorted(g.ac.nef.rays()) ==
        std::vector<tv::QVec>{qvi({0, 1}), qvi({1, 0})});
}

TEST_CASE("reduced ample cone of BlP2 is a0 > a1 > 0") {
  Gauge g = gauge("blp2", 2);
  CHECK(sorted(g.ac.L_red) ==
        std::vector<tv::QVec>{qvi({0, 1}), qvi({1, -1}), qvi({1, 0})});
  CHECK(sorted(g.ac.nef.facet_normals) ==
        std::vector<tv::QVec>{qvi({0, 1}), qvi({1, -1})});
  CHECK(sorted(g.ac.nef.rays()) ==
        std::vector<tv::QVec>{qvi({1, 0}), qvi({1, 1})});

  CHECK(tv::is_ample_reduced(g.ac, qvi({7, 2})));
  CHECK(tv::is_ample_reduced(g.ac, qvi({3, 2})));
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({2, 2})));   // a0 = a1
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({1, 2})));   // a0 < a1
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({3, 0})));   // a1 = 0
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({0, 0})));
}

TEST_CASE("reduced ample cone of the blown-up Hirzebruch surface") {
  Gauge g = gauge("blhirz", 0);
  CHECK(sorted(g.ac.L_red) ==
        std::vector<tv::QVec>{qvi({0, 0, 1}), qvi({0, 1, -1}),
                              qvi({0, 1, 0}), qvi({0, 2, -1}),
                              qvi({1, -1, 1}), qvi({1, 0, 0}),
                              qvi({1, 1, 0}), qvi({2, 0, 1})});
  // facets: a2 - a3 + a4 >= 0, a3 - a4 >= 0, a4 >= 0
  CHECK(sorted(g.ac.nef.facet_normals) ==
        std::vector<tv::QVec>{qvi({0, 0, 1}), qvi({0, 1, -1}),
                              qvi({1, -1, 1})});
  CHECK(sorted(g.ac.nef.rays()) ==
        std::vector<tv::QVec>{qvi({0, 1, 1}), qvi({1, 0, 0}),
                              qvi({1, 1, 0})});

  CHECK(tv::is_ample_reduced(g.ac, qvi({7, 5, 4})));
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({7, 4, 4})));   // a3 = a4
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({1, 5, 4})));   // a2+a4 < a3
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({7, 5, 0})));   // a4 = 0
}

TEST_CASE("reduced ample cone of the doubly blown-up P3") {
  Gauge g = gauge("bl2p3", 6);
  CHECK(sorted(g.ac.L_red) ==
        std::vector<tv::QVec>{qvi({-1, 1, 1}), qvi({0, 0, 1}),
                              qvi({0, 1, 0}), qvi({1, -1, 0}),
                              qvi({1, 0, -1}), qvi({1, 0, 0})});
  CHECK(sorted(g.ac.nef.facet_normals) ==
        std::vector<tv::QVec>{qvi({-1, 1, 1}), qvi({1, -1, 0}),
                              qvi({1, 0, -1})});
  CHECK(sorted(g.ac.nef.rays()) ==
        std::vector<tv::QVec>{qvi({1, 0, 1}), qvi({1, 1, 0}),
                              qvi({1, 1, 1})});

  // frozen negative probes around the cone
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({3, 1, 1})));
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({7, 2, 3})));
  CHECK_FALSE(tv::is_ample_reduced(g.ac, qvi({1, 1, 1})));
  CHECK(tv::is_ample_reduced(g.ac, qvi({4, 3, 2})));
}

TEST_CASE("generic ample test agrees with the reduced one") {
  Gauge g = gauge("blp2", 2);
  for (auto red : {qvi({7, 2}), qvi({2, 2}), qvi({1, 2}), qvi({5, 1})}) {
    CHECK(tv::is_ample(g.fan, lift(g, red)) ==
          tv::is_ample_reduced(g.ac, red));
  }
}

TEST_CASE("interior point and random samples are ample") {
  std::mt19937_64 rng(0xA11CE);
  for (const char* name : {"p1p1", "blp2", "blhirz", "bl2p3"}) {
    INFO(name);
    int base = std::string(name) == "p1p1"     ? 3
               : std::string(name) == "blp2"   ? 2
               : std::string(name) == "blhirz" ? 0
                                               : 6;
    Gauge g = gauge(name, base);
    CHECK(tv::is_ample_reduced(g.ac, tv::nef_interior_point(g.ac)));
    for (int i = 0; i < 25; ++i)
      CHECK(tv::is_ample_reduced(g.ac, tv::ample_sample(g.ac, rng)));
  }
}

TEST_CASE("cross-section functional from the facet normals") {
  Gauge g = gauge("blhirz", 0);
  tv::SliceChart chart = tv::slice_hyperplane(g.ac);
  CHECK(chart.f == qvi({1, 0, 1}));  // a2 + a4
  CHECK(chart.c == Q(1));
  // every nef extremal ray meets the slice at level 1
  for (const tv::QVec& r : g.ac.nef.rays()) CHECK(tv::dot(chart.f, r) == Q(1));
  CHECK(chart.elim == 2);
  CHECK(chart.x == 0);
  CHECK(chart.y == 1);

  Gauge g4 = gauge("bl2p3", 6);
  tv::SliceChart chart4 = tv::slice_hyperplane(g4.ac);
  CHECK(chart4.f == qvi({1, 0, 0}));  // a2
  CHECK(chart4.c == Q(1));
  CHECK(chart4.elim == 0);
  CHECK(chart4.x == 1);
  CHECK(chart4.y == 2);
}

TEST_CASE("explicit chart construction") {
  tv::SliceChart chart = tv::make_chart(qvi({1, 0, 1}), Q(2));
  CHECK(chart.elim == 2);  // last free slot with a nonzero coefficient
  CHECK(chart.x == 0);
  CHECK(chart.y == 1);
  CHECK(chart.c == Q(2));
}
