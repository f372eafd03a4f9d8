#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "tropmirror/coamoeba.hpp"
#include "tropmirror/tropical.hpp"

using namespace tropmirror;
using namespace tropmirror::coamoeba;

namespace {

const std::vector<Edge> kAllEdges = {Edge::E1, Edge::E2, Edge::E3, Edge::E12, Edge::E13, Edge::E23};

Point plus_point(std::vector<double> theta) { return {std::move(theta), Region::plus}; }

// rejection-samples an interior point of either region with the given
// radicand floor
Point random_interior(const Spec& spec, std::mt19937_64& rng, double floor = 1e-3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        std::vector<double> theta(static_cast<std::size_t>(spec.n));
        for (auto& v : theta) v = u(rng);
        double s = 0;
        for (double v : theta) s += v;
        double lo = spec.n == 3 ? 1.0 : 0.5, hi = spec.n == 3 ? 2.0 : 1.5;
        Region r;
        if (s < lo)
            r = Region::plus;
        else if (s > hi)
            r = Region::minus;
        else
            continue;
        if (radicand(spec, theta) < floor) continue;
        return {theta, r};
    }
}

} // namespace

TEST_CASE("primitive values") {
    Spec s3 = Spec::make(3);
    CHECK(g_eval(s3, plus_point({0.25, 0.25, 0.25})) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(g_eval(s3, plus_point({0.2, 0.3, 0.0})) == 0.0);

    Spec s2 = Spec::make(2);
    CHECK(g_eval(s2, {{1.0 / 6, 1.0 / 6}, Region::plus}) ==
          doctest::Approx(-0.35355339059327373).epsilon(1e-14));

    Spec scaled = Spec::make(3, 2.5);
    CHECK(g_eval(scaled, plus_point({0.25, 0.25, 0.25})) == doctest::Approx(-1.25).epsilon(1e-14));

    // minus region mirrors with opposite sign
    CHECK(g_eval(s3, {{0.75, 0.75, 0.75}, Region::minus}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("region and radicand validation") {
    Spec s3 = Spec::make(3);
    CHECK_THROWS_AS(g_eval(s3, plus_point({0.4, 0.4, 0.4})), DomainError);  // sum = 1.2
    CHECK_THROWS_AS(g_eval(s3, {{0.2, 0.2, 0.2}, Region::minus}), DomainError);

    // a sum-face breach below the clamp threshold clamps to zero
    CHECK(g_eval(s3, plus_point({0.5, 0.5, 1e-13})) == 0.0);
    // a breach beyond the threshold is rejected
    CHECK_THROWS_AS(g_eval(s3, {{0.75, 0.75, 0.5 - 9e-13}, Region::minus}), DomainError);

    CHECK_THROWS_AS(Spec::make(4), DomainError);
    CHECK_THROWS_AS(Spec::make(3, 0.0), DomainError);
}

TEST_CASE("boundary vanishing on sampled faces") {
    Spec s3 = Spec::make(3);
    // coordinate faces and the sum = 1 face, exactly representable sums
    CHECK(g_eval(s3, plus_point({0.0, 0.3, 0.4})) == 0.0);
    CHECK(g_eval(s3, plus_point({0.25, 0.25, 0.5})) == 0.0);
    CHECK(g_eval(s3, plus_point({0.125, 0.375, 0.5})) == 0.0);
    CHECK(g_eval(s3, {{0.75, 0.5, 0.75}, Region::minus}) == 0.0);

    Spec s2 = Spec::make(2);
    CHECK(g_eval(s2, {{0.25, 0.25}, Region::plus}) == 0.0);
    CHECK(g_eval(s2, {{0.125, 0.375}, Region::plus}) == 0.0);
    CHECK(g_eval(s2, {{0.75, 0.75}, Region::minus}) == 0.0);
    CHECK(std::abs(g_eval(s2, {{0.1, 0.2}, Region::plus})) > 0.1);
}

TEST_CASE("gradient examples") {
    Spec s3 = Spec::make(3);
    auto center = dg_eval(s3, plus_point({0.25, 0.25, 0.25}));
    CHECK(center[0] == 0.0);
    CHECK(center[1] == 0.0);
    CHECK(center[2] == 0.0);

    auto sym = dg_eval(s3, plus_point({0.2, 0.3, 0.2}));
    CHECK(sym[0] == doctest::Approx(sym[2]).epsilon(1e-15));

    CHECK_THROWS_AS(dg_eval(s3, plus_point({0.2, 0.3, 0.0})), DomainError);
}

TEST_CASE("gradient matches finite differences") {
    Spec s3 = Spec::make(3);
    const double h = 1e-5;
    std::vector<double> theta = {0.2, 0.25, 0.3};
    auto grad = dg_eval(s3, plus_point(theta));
    for (int i = 0; i < 3; ++i) {
        auto qp = theta, qm = theta;
        qp[static_cast<std::size_t>(i)] += h;
        qm[static_cast<std::size_t>(i)] -= h;
        double fd = (g_eval(s3, plus_point(qp)) - g_eval(s3, plus_point(qm))) / (2 * h);
        CHECK(std::abs(grad[static_cast<std::size_t>(i)] - fd) < 1e-7);
    }

    CHECK(fd_gradient_mismatch(Spec::make(3), 1000, 20240401) < 1e-6);
    CHECK(fd_gradient_mismatch(Spec::make(2), 1000, 20240402) < 1e-6);
}

TEST_CASE("antipodal symmetry of the gradient") {
    std::mt19937_64 rng(515);
    for (int n : {2, 3}) {
        Spec spec = Spec::make(n, 0.7);
        for (int trial = 0; trial < 250; ++trial) {
            Point p = random_interior(spec, rng);
            Point q;
            q.region = p.region == Region::plus ? Region::minus : Region::plus;
            for (double v : p.theta) q.theta.push_back(1.0 - v);
            auto a = dg_eval(spec, p), b = dg_eval(spec, q);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) <
                      1e-12);
        }
    }
}

TEST_CASE("blowup chart values") {
    Spec s3 = Spec::make(3);
    auto v = dg_extended(s3, {Edge::E3, 1.0, 0.0, 0.25});
    CHECK(v[0] == doctest::Approx(-1.1107207345395916).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(-1.1107207345395916).epsilon(1e-14));
    CHECK(v[2] == 0.0);

    // analytic limit -pi sin(pi free)/(2 sqrt(ratio)) for the first component
    auto w = dg_extended(s3, {Edge::E3, 0.49, 0.0, 0.3});
    CHECK(w[0] == doctest::Approx(-kPi * std::sin(kPi * 0.3) / (2 * std::sqrt(0.49))).epsilon(1e-13));
    CHECK(w[2] == 0.0);

    // the k-th component vanishes exactly at t = 0 across each E_k chart
    for (double ratio : {0.1, 0.5, 1.0})
        for (double fc : {0.1, 0.45, 0.9}) {
            CHECK(dg_extended(s3, {Edge::E1, ratio, 0.0, fc})[0] == 0.0);
            CHECK(dg_extended(s3, {Edge::E2, ratio, 0.0, fc})[1] == 0.0);
            CHECK(dg_extended(s3, {Edge::E3, ratio, 0.0, fc})[2] == 0.0);
        }

    // the t = 0 limit agrees with the gradient just off the exceptional locus
    auto limit = dg_extended(s3, {Edge::E3, 1.0, 0.0, 0.25});
    ChartPoint near{Edge::E3, 1.0, 1e-6, 0.25};
    auto base = chart_image(near);
    auto off = dg_eval(s3, {{base[0], base[1], base[2]}, Region::plus});
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(limit[static_cast<std::size_t>(i)] - off[static_cast<std::size_t>(i)]) <
              1e-4);

    CHECK_THROWS_AS(dg_extended(Spec::make(2), {Edge::E3, 1.0, 0.0, 0.25}), DomainError);
    CHECK_THROWS_AS(dg_extended(s3, {Edge::E3, 0.0, 0.0, 0.25}), DomainError);
    CHECK_THROWS_AS(dg_extended(s3, {Edge::E3, 1.0, 0.5, 0.25}), DomainError);
    // valid coordinates whose image leaves the coamoeba
    CHECK_THROWS_AS(dg_extended(s3, {Edge::E3, 1.0, 0.19, 0.9}), DomainError);
}

TEST_CASE("charts agree with the gradient off the exceptional locus") {
    Spec s3 = Spec::make(3);
    std::vector<double> ts = {0.2, 0.1, 0.05, -0.05, -0.1, -0.2};
    double worst = 0.0;
    for (Edge e : kAllEdges)
        for (double t : ts)
            for (double ratio : {0.3, 0.7, 1.0})
                for (double fc : {0.2, 0.5, 0.8}) {
                    ChartPoint q{e, ratio, t, fc};
                    if (detail::chart_radicand(q) <= 1e-9) continue;
                    auto base = chart_image(q);
                    double s = base[0] + base[1] + base[2];
                    Region reg = s <= 1.0 ? Region::plus : Region::minus;
                    auto direct = dg_eval(s3, {{base[0], base[1], base[2]}, reg});
                    auto ext = dg_extended(s3, q);
                    for (int i = 0; i < 3; ++i)
                        worst = std::max(worst, std::abs(ext[static_cast<std::size_t>(i)] -
                                                         direct[static_cast<std::size_t>(i)]));
                }
    CHECK(worst < 1e-10);

    // the tighter single-point bound from the chart-compatibility example
    ChartPoint q{Edge::E3, 0.6, 0.1, 0.35};
    auto base = chart_image(q);
    auto direct = dg_eval(s3, {{base[0], base[1], base[2]}, Region::plus});
    auto ext = dg_extended(s3, q);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(ext[static_cast<std::size_t>(i)] - direct[static_cast<std::size_t>(i)]) <
              1e-12);
}

TEST_CASE("cone membership at the exceptional locus") {
    Spec s3 = Spec::make(3);
    auto r = cone_membership(s3, {Edge::E3, 1.0, 0.0, 0.25});
    CHECK(r.member);
    CHECK(r.residual <= 1e-12);

    // E1 analogue: first covector component vanishes
    auto v = dg_extended(s3, {Edge::E1, 0.5, 0.0, 0.3});
    CHECK(v[0] == 0.0);
    CHECK(cone_membership(s3, {Edge::E1, 0.5, 0.0, 0.3}).member);

    CHECK(cone_membership(s3, {Edge::E23, 0.8, 0.0, 0.6}).member);

    double worst = 0.0;
    for (Edge e : kAllEdges)
        for (double ratio : {0.05, 0.3, 0.65, 1.0})
            for (double fc : {0.1, 0.35, 0.6, 0.9})
                worst = std::max(worst, cone_membership(s3, {e, ratio, 0.0, fc}).residual);
    CHECK(worst <= 1e-9);

    CHECK_THROWS_AS(cone_membership(s3, {Edge::E3, 1.0, 0.05, 0.25}), DomainError);
}

TEST_CASE("closedness certification") {
    auto r3 = certify_closed(Spec::make(3), 31, 1e-7);
    CHECK(r3.pass);
    CHECK(r3.max_asymmetry <= 1e-7);
    CHECK(r3.samples.size() > 5000);

    auto r2 = certify_closed(Spec::make(2), 31, 1e-8);
    CHECK(r2.pass);
    CHECK(r2.max_asymmetry <= 1e-8);

    CHECK_THROWS_AS(certify_closed(Spec::make(3), 4, 1e-7), DomainError);
}

TEST_CASE("certification detects a corrupted component") {
    Spec s3 = Spec::make(3);
    auto corrupted = [&](const std::vector<double>& theta, Region r) {
        auto g = dg_eval(s3, Point{theta, r});
        g[0] += 0.01 * theta[1] * theta[1];  // breaks ddg symmetry in (1,2)
        return g;
    };
    auto r = certify_closed(s3, 16, 1e-7, corrupted);
    CHECK_FALSE(r.pass);
    CHECK(r.max_asymmetry > 1e-4);
}

TEST_CASE("immersion sampling") {
    Spec s3 = Spec::make(3);
    auto cloud = sample_immersion(s3, 16);
    CHECK(cloud.size() > 5000);
    for (const auto& sample : cloud) {
        double s = 0;
        for (double v : sample.theta) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0 + 1e-12);
            s += v;
        }
        CHECK((s <= 1.0 + 1e-9 || s >= 2.0 - 1e-9));
        for (double v : sample.covector) CHECK(std::isfinite(v));
    }
}

TEST_CASE("immersion stays close to the tropical curve") {
    Spec s3 = Spec::make(3, 0.01);
    auto V = standard_four_valent();
    double worst = 0.0;
    for (const auto& sample : sample_immersion(s3, 16))
        worst = std::max(worst, distance_to_curve(sample.covector, V));
    CHECK(worst <= 0.05);

    Spec s2 = Spec::make(2, 0.01);
    auto pants = standard_pants();
    double worst2 = 0.0;
    for (const auto& sample : sample_immersion(s2, 16))
        worst2 = std::max(worst2, distance_to_curve(sample.covector, pants));
    CHECK(worst2 <= 0.05);
}

TEST_CASE("fibers align with the pants legs near the region edges") {
    Spec s2 = Spec::make(2);
    auto aligned = [&](const Point& p, std::array<double, 2> leg) {
        auto g = dg_eval(s2, p);
        double n = std::hypot(g[0], g[1]);
        double ln = std::hypot(leg[0], leg[1]);
        return (g[0] * leg[0] + g[1] * leg[1]) / (n * ln);
    };
    CHECK(aligned(plus_point({1e-4, 0.2}), {-1, 0}) > 0.999);
    CHECK(aligned(plus_point({0.2, 1e-4}), {0, -1}) > 0.999);
    CHECK(aligned(plus_point({0.2499, 0.2499}), {1, 1}) > 0.999);
}
