#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tropmirror/errors.hpp"

namespace tropmirror {
namespace coamoeba {

constexpr double kPi = std::numbers::pi;
constexpr double kRadicandClamp = 1e-12;
constexpr double kChartHalfWidth = 0.2;
constexpr double kVertexMargin = 1e-3;

/// sin(pi x) with exact zeros at integers (argument reduced before scaling).
inline double sinpi(double x) {
    double k = std::round(x);
    double s = std::sin(kPi * (x - k));
    return static_cast<std::int64_t>(k) % 2 != 0 ? -s : s;
}

/// cos(pi x) with exact zeros at half-integers.
inline double cospi(double x) { return sinpi(x + 0.5); }

/// sin(pi x)/x extended by continuity; equals pi at x = 0.
inline double sinpi_over(double x) {
    if (x == 0.0) return kPi;
    return sinpi(x) / x;
}

enum class Region { plus, minus };

inline double region_sign(Region r) { return r == Region::plus ? -1.0 : 1.0; }

/// Which coamoeba: the pair-of-pants simplices in T^2 or the tetrahedral
/// pair in T^3, with an overall positive scale on the primitive.
struct Spec {
    int n;
    double lambda;

    static Spec make(int n, double lambda = 1.0) {
        if (n != 2 && n != 3) throw DomainError("bad_parameter", "coamoeba dimension must be 2 or 3");
        if (!(lambda > 0)) throw DomainError("bad_parameter", "scale lambda must be positive");
        return {n, lambda};
    }
};

struct Point {
    std::vector<double> theta;
    Region region;
};

/// The product under the square root. Independent of the region tag:
/// n=3: sin(pi s) sin(pi t1) sin(pi t2) sin(pi t3), n=2: cos(pi s) sin(pi t1) sin(pi t2).
inline double radicand(const Spec& spec, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != spec.n)
        throw DomainError("bad_shape", "theta dimension mismatch");
    double s = 0;
    double prod = 1;
    for (double t : theta) {
        s += t;
        prod *= sinpi(t);
    }
    return (spec.n == 3 ? sinpi(s) : cospi(s)) * prod;
}

inline bool in_closed_region(const Spec& spec, const Point& p) {
    double s = 0;
    for (double t : p.theta) {
        if (t < -kRadicandClamp || t > 1 + kRadicandClamp) return false;
        s += t;
    }
    double lo = spec.n == 3 ? 1.0 : 0.5;
    double hi = spec.n == 3 ? 2.0 : 1.5;
    return p.region == Region::plus ? s <= lo + kRadicandClamp : s >= hi - kRadicandClamp;
}

/// The coamoeba primitive: -(lambda) sqrt(radicand) on the plus region,
/// +(lambda) sqrt(radicand) on the minus region. Vanishes on the boundary
/// faces. Radicands below -1e-12 are a region violation; tiny negatives
/// clamp to zero.
inline double g_eval(const Spec& spec, const Point& p) {
    if (!in_closed_region(spec, p))
        throw DomainError("region_violation", "point is not in its tagged region");
    double r = radicand(spec, p.theta);
    if (r < -kRadicandClamp)
        throw DomainError("region_violation", "negative radicand: point outside the coamoeba");
    if (r < 0) r = 0;
    return region_sign(p.region) * spec.lambda * std::sqrt(r);
}

/// Analytic gradient of g_eval; defined on region interiors only.
inline std::vector<double> dg_eval(const Spec& spec, const Point& p) {
    if (!in_closed_region(spec, p))
        throw DomainError("region_violation", "point is not in its tagged region");
    double r = radicand(spec, p.theta);
    if (r <= 0)
        throw DomainError("boundary_point", "gradient undefined on the boundary; use dg_extended");
    double den = 2.0 * std::sqrt(r);
    double s = 0;
    for (double t : p.theta) s += t;
    std::vector<double> out(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        double others = 1;
        for (int j = 0; j < spec.n; ++j)
            if (j != i) others *= sinpi(p.theta[static_cast<std::size_t>(j)]);
        double head = spec.n == 3 ? sinpi(s + p.theta[static_cast<std::size_t>(i)])
                                  : cospi(s + p.theta[static_cast<std::size_t>(i)]);
        out[static_cast<std::size_t>(i)] =
            region_sign(p.region) * spec.lambda * kPi * others * head / den;
    }
    return out;
}

// ------------------------------ real blowup --------------------------------

enum class Edge { E1, E2, E3, E12, E13, E23 };

inline const char* edge_name(Edge e) {
    switch (e) {
        case Edge::E1: return "E1";
        case Edge::E2: return "E2";
        case Edge::E3: return "E3";
        case Edge::E12: return "E12";
        case Edge::E13: return "E13";
        case Edge::E23: return "E23";
    }
    return "?";
}

inline Edge edge_from_name(const std::string& s) {
    for (Edge e : {Edge::E1, Edge::E2, Edge::E3, Edge::E12, Edge::E13, Edge::E23})
        if (s == edge_name(e)) return e;
    throw DomainError("bad_parameter", "unknown edge '" + s + "'");
}

/// Chart point over an edge of the n=3 coamoeba: ratio coordinate in (0,1],
/// blowup parameter |t| < 0.2, free coordinate in (0,1). t = 0 is the
/// exceptional locus; for t != 0 the chart image must land inside Delta.
struct ChartPoint {
    Edge edge;
    double ratio;
    double t;
    double free_coord;
};

namespace detail {
inline bool chart_in_range(const ChartPoint& q) {
    return q.ratio > 0 && q.ratio <= 1 && std::abs(q.t) <= kChartHalfWidth && q.free_coord > 0 &&
           q.free_coord < 1;
}
} // namespace detail

namespace detail {

// The other five charts are carried to the E3 chart by the symmetry group
// of the coamoeba; each entry is the affine map theta -> A theta + b on the
// base and the matrix A^{-T} acting on covectors.
struct EdgeTransport {
    std::array<std::array<double, 3>, 3> a;
    std::array<double, 3> b;
    std::array<std::array<double, 3>, 3> covector;  // A^{-T}
};

inline const EdgeTransport& transport(Edge e) {
    static const EdgeTransport e3 = {{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
                                     {0, 0, 0},
                                     {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
    static const EdgeTransport e1 = {{{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}},
                                     {0, 0, 0},
                                     {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}};
    static const EdgeTransport e2 = {{{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}},
                                     {0, 0, 0},
                                     {{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}}};
    static const EdgeTransport e13 = {{{{-1, -1, -1}, {0, 1, 0}, {0, 0, 1}}},
                                      {1, 0, 0},
                                      {{{-1, 0, 0}, {-1, 1, 0}, {-1, 0, 1}}}};
    static const EdgeTransport e23 = {{{{1, 0, 0}, {-1, -1, -1}, {0, 0, 1}}},
                                      {0, 1, 0},
                                      {{{1, -1, 0}, {0, -1, 0}, {0, -1, 1}}}};
    static const EdgeTransport e12 = {{{{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}}},
                                      {1, 0, 0},
                                      {{{-1, 0, 0}, {-1, 0, 1}, {-1, 1, 0}}}};
    switch (e) {
        case Edge::E1: return e1;
        case Edge::E2: return e2;
        case Edge::E3: return e3;
        case Edge::E12: return e12;
        case Edge::E13: return e13;
        case Edge::E23: return e23;
    }
    return e3;
}

inline std::array<double, 3> mat_apply(const std::array<std::array<double, 3>, 3>& m,
                                       const std::array<double, 3>& v) {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[static_cast<std::size_t>(i)] +=
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                v[static_cast<std::size_t>(j)];
    return out;
}

// radicand divided by t^2, nonsingular across t = 0
inline double chart_radicand(const ChartPoint& q) {
    double big = sinpi_over(q.t);                   // sin(pi t)/t
    double small = q.ratio * sinpi_over(q.t * q.ratio);  // sin(pi t ratio)/t
    return small * big * sinpi(q.free_coord) * sinpi(q.t * q.ratio + q.t + q.free_coord);
}

inline void validate_chart(const ChartPoint& q) {
    if (!chart_in_range(q)) throw DomainError("out_of_chart", "chart coordinates out of range");
    if (chart_radicand(q) <= 0)
        throw DomainError("out_of_chart", "chart image leaves the coamoeba");
}

inline std::array<double, 3> dg_extended_e3(const Spec& spec, const ChartPoint& q) {
    double big = sinpi_over(q.t);
    double small = q.ratio * sinpi_over(q.t * q.ratio);
    double s3 = sinpi(q.free_coord);
    double base = q.t * q.ratio + q.t + q.free_coord;
    double den = 2.0 * std::sqrt(small * big * s3 * sinpi(base));
    return {-spec.lambda * kPi * big * s3 * sinpi(base + q.t * q.ratio) / den,
            -spec.lambda * kPi * small * s3 * sinpi(base + q.t) / den,
            -spec.lambda * q.t * kPi * small * big * sinpi(base + q.free_coord) / den};
}

} // namespace detail

/// Base point of a chart point in [0,1)^3.
inline std::array<double, 3> chart_image(const ChartPoint& q) {
    detail::validate_chart(q);
    const auto& tr = detail::transport(q.edge);
    std::array<double, 3> p = detail::mat_apply(tr.a, {q.t * q.ratio, q.t, q.free_coord});
    for (int i = 0; i < 3; ++i) {
        double v = p[static_cast<std::size_t>(i)] + tr.b[static_cast<std::size_t>(i)];
        v -= std::floor(v);
        p[static_cast<std::size_t>(i)] = v;
    }
    return p;
}

/// Smooth extension of dg across the blowup: the E3 formulas in sinc form
/// transported to the other edges by the coamoeba symmetries. The edge
/// component vanishes exactly at t = 0.
inline std::array<double, 3> dg_extended(const Spec& spec, const ChartPoint& q) {
    if (spec.n != 3) throw DomainError("bad_parameter", "blowup charts exist for n = 3 only");
    detail::validate_chart(q);
    return detail::mat_apply(detail::transport(q.edge).covector, detail::dg_extended_e3(spec, q));
}

// ------------------------------ cone images --------------------------------

struct ConeReport {
    double residual;
    bool member;
};

/// Legs of the model curve: u_0 = (1,1,1), u_i = -e_i.
inline std::array<double, 3> leg(int i) {
    switch (i) {
        case 0: return {1, 1, 1};
        case 1: return {-1, 0, 0};
        case 2: return {0, -1, 0};
        case 3: return {0, 0, -1};
        default: throw DomainError("bad_index", "leg index must be in {0..3}");
    }
}

/// Euclidean distance from v to Cone{e, f}.
inline double cone_distance(const std::array<double, 3>& v, const std::array<double, 3>& e,
                            const std::array<double, 3>& f) {
    auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    double best = std::sqrt(dot(v, v));  // distance to the apex
    double ee = dot(e, e), ff = dot(f, f), ef = dot(e, f);
    double ev = dot(e, v), fv = dot(f, v);
    double det = ee * ff - ef * ef;
    auto dist_to = [&](double se, double sf) {
        std::array<double, 3> w = {v[0] - se * e[0] - sf * f[0], v[1] - se * e[1] - sf * f[1],
                                   v[2] - se * e[2] - sf * f[2]};
        return std::sqrt(dot(w, w));
    };
    if (det != 0) {
        double se = (ev * ff - fv * ef) / det;
        double sf = (fv * ee - ev * ef) / det;
        if (se >= 0 && sf >= 0) best = std::min(best, dist_to(se, sf));
    }
    best = std::min(best, dist_to(std::max(0.0, ev / ee), 0.0));
    best = std::min(best, dist_to(0.0, std::max(0.0, fv / ff)));
    return best;
}

/// At t = 0, the extended differential lands in Cone{u_j, u_k} over the edge
/// E_i and in Cone{u_0, u_i} over E_jk.
inline ConeReport cone_membership(const Spec& spec, const ChartPoint& q, double tol = 1e-9) {
    if (q.t != 0.0) throw DomainError("bad_parameter", "cone membership is a t = 0 statement");
    auto v = dg_extended(spec, q);
    std::array<double, 3> e{}, f{};
    switch (q.edge) {
        case Edge::E1: e = leg(2), f = leg(3); break;
        case Edge::E2: e = leg(1), f = leg(3); break;
        case Edge::E3: e = leg(1), f = leg(2); break;
        case Edge::E12: e = leg(0), f = leg(3); break;
        case Edge::E13: e = leg(0), f = leg(2); break;
        case Edge::E23: e = leg(0), f = leg(1); break;
    }
    double residual = cone_distance(v, e, f);
    return {residual, residual <= tol};
}

// ------------------------- closedness certification ------------------------

struct CurlSample {
    std::vector<double> theta;
    double asymmetry;
};

struct CurlReport {
    double max_asymmetry = 0.0;
    std::vector<double> worst_point;
    bool pass = false;
    std::vector<CurlSample> samples;
};

using GradientFn = std::function<std::vector<double>(const std::vector<double>&, Region)>;

namespace detail {

// 4th-order central difference step for the curl sweep
constexpr double kCurlStep = 3e-5;

inline bool classify(const Spec& spec, const std::vector<double>& theta, Region& region) {
    double s = 0;
    for (double t : theta) s += t;
    double lo = spec.n == 3 ? 1.0 : 0.5;
    double hi = spec.n == 3 ? 2.0 : 1.5;
    if (s < lo)
        region = Region::plus;
    else if (s > hi)
        region = Region::minus;
    else
        return false;
    return radicand(spec, theta) > 0;
}

} // namespace detail

/// Max over interior grid points of |d_i(dg_j) - d_j(dg_i)|, computed with
/// 4th-order central differences of the gradient. A grid point is interior
/// when the whole difference stencil stays inside the open region.
inline CurlReport certify_closed(const Spec& spec, int resolution, double tol,
                                 const GradientFn& gradient) {
    if (resolution < 8) throw DomainError("bad_parameter", "certification needs resolution >= 8");
    const double h = detail::kCurlStep;
    CurlReport report;

    std::vector<int> idx(static_cast<std::size_t>(spec.n), 1);
    auto advance = [&]() {
        for (int d = spec.n - 1; d >= 0; --d) {
            if (++idx[static_cast<std::size_t>(d)] < resolution) return true;
            idx[static_cast<std::size_t>(d)] = 1;
        }
        return false;
    };

    do {
        std::vector<double> theta(static_cast<std::size_t>(spec.n));
        for (int d = 0; d < spec.n; ++d)
            theta[static_cast<std::size_t>(d)] =
                static_cast<double>(idx[static_cast<std::size_t>(d)]) / resolution;
        Region region;
        if (!detail::classify(spec, theta, region)) continue;

        bool interior = true;
        for (int i = 0; i < spec.n && interior; ++i)
            for (double step : {h, 2 * h, -h, -2 * h}) {
                auto q = theta;
                q[static_cast<std::size_t>(i)] += step;
                if (radicand(spec, q) <= 0) {
                    interior = false;
                    break;
                }
            }
        if (!interior) continue;

        auto partial = [&](int i, int comp) {
            auto shifted = [&](double step) {
                auto q = theta;
                q[static_cast<std::size_t>(i)] += step;
                return gradient(q, region)[static_cast<std::size_t>(comp)];
            };
            return (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) + shifted(-2 * h)) /
                   (12 * h);
        };

        double worst_here = 0.0;
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j)
                worst_here = std::max(worst_here, std::abs(partial(i, j) - partial(j, i)));
        report.samples.push_back({theta, worst_here});
        if (worst_here > report.max_asymmetry) {
            report.max_asymmetry = worst_here;
            report.worst_point = theta;
        }
    } while (advance());

    report.pass = report.max_asymmetry <= tol;
    return report;
}

inline CurlReport certify_closed(const Spec& spec, int resolution, double tol) {
    return certify_closed(spec, resolution, tol, [&spec](const std::vector<double>& theta, Region r) {
        return dg_eval(spec, Point{theta, r});
    });
}

// ----------------------------- immersion sampling --------------------------

struct ImmersionSample {
    std::vector<double> theta;     // base point in [0,1)^n
    std::vector<double> covector;  // dg (interior) or extended dg (charts)
};

/// Deterministic point cloud of (base, covector) pairs covering the region
/// interiors and, for n = 3, all six blowup charts including t = 0. Points
/// within 1e-3 of a coamoeba vertex are excluded (the vertices are not part
/// of the coamoeba); every covector is finite.
inline std::vector<ImmersionSample> sample_immersion(const Spec& spec, int resolution) {
    if (resolution < 4) throw DomainError("bad_parameter", "sampling needs resolution >= 4");
    std::vector<ImmersionSample> out;

    std::vector<int> idx(static_cast<std::size_t>(spec.n), 1);
    auto advance = [&]() {
        for (int d = spec.n - 1; d >= 0; --d) {
            if (++idx[static_cast<std::size_t>(d)] < resolution) return true;
            idx[static_cast<std::size_t>(d)] = 1;
        }
        return false;
    };
    do {
        std::vector<double> theta(static_cast<std::size_t>(spec.n));
        double vertex_dist2 = 0;
        for (int d = 0; d < spec.n; ++d) {
            double v = static_cast<double>(idx[static_cast<std::size_t>(d)]) / resolution;
            theta[static_cast<std::size_t>(d)] = v;
            double w = std::min(v, 1 - v);
            vertex_dist2 += w * w;
        }
        Region region;
        if (!detail::classify(spec, theta, region)) continue;
        if (vertex_dist2 < kVertexMargin * kVertexMargin) continue;
        out.push_back({theta, dg_eval(spec, Point{theta, region})});
    } while (advance());

    if (spec.n == 3) {
        constexpr int kTSamples = 9;  // includes t = 0 at the midpoint
        for (Edge e : {Edge::E1, Edge::E2, Edge::E3, Edge::E12, Edge::E13, Edge::E23}) {
            for (int a = 1; a <= resolution; ++a) {
                double ratio = static_cast<double>(a) / resolution;
                for (int b = 0; b < kTSamples; ++b) {
                    double t = -0.18 + 0.36 * b / (kTSamples - 1);
                    for (int c = 1; c < resolution; ++c) {
                        double fc = static_cast<double>(c) / resolution;
                        ChartPoint q{e, ratio, t, fc};
                        if (detail::chart_radicand(q) <= 0) continue;
                        auto base = chart_image(q);
                        auto cov = dg_extended(spec, q);
                        out.push_back({{base[0], base[1], base[2]}, {cov[0], cov[1], cov[2]}});
                    }
                }
            }
        }
    }
    return out;
}

/// Max mismatch between the analytic gradient and second-order central
/// differences of g (step 1e-5) at seeded random interior points sampled
/// with radicand >= 0.05.
inline double fd_gradient_mismatch(const Spec& spec, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-5;
    double worst = 0.0;
    int accepted = 0;
    while (accepted < samples) {
        std::vector<double> theta(static_cast<std::size_t>(spec.n));
        for (auto& v : theta) v = u(rng);
        Region region;
        if (!detail::classify(spec, theta, region)) continue;
        if (radicand(spec, theta) < 0.05) continue;
        ++accepted;
        auto grad = dg_eval(spec, Point{theta, region});
        for (int i = 0; i < spec.n; ++i) {
            auto qp = theta, qm = theta;
            qp[static_cast<std::size_t>(i)] += h;
            qm[static_cast<std::size_t>(i)] -= h;
            double fd = (g_eval(spec, Point{qp, region}) - g_eval(spec, Point{qm, region})) / (2 * h);
            worst = std::max(worst, std::abs(grad[static_cast<std::size_t>(i)] - fd));
        }
    }
    return worst;
}

} // namespace coamoeba
} // namespace tropmirror
