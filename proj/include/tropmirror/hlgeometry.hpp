#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <utility>

#include "tropmirror/chainlink.hpp"
#include "tropmirror/field.hpp"

namespace tropmirror {
namespace hl {

/// A point on the link of the Harvey-Lawson cone: all moduli equal
/// sqrt(eps/3) and the coordinate product is real and nonnegative.
struct LinkPoint {
    double s, t, eps;
    std::array<std::complex<double>, 3> z;
};

inline LinkPoint link_point(double s, double t, double eps) {
    if (!(eps > 0)) throw DomainError("bad_parameter", "link_point requires eps > 0");
    double r = std::sqrt(eps / 3.0);
    return {s, t, eps,
            {r * std::polar(1.0, s), r * std::polar(1.0, t), r * std::polar(1.0, -s - t)}};
}

constexpr double kCausticThreshold = 1e-12;

/// Front projection e^{n.y} n with n = x/|x| for z = x + iy on the link.
/// Points with |x| at the caustic threshold are rejected.
inline std::array<double, 3> front_projection(double s, double t, double eps) {
    LinkPoint p = link_point(s, t, eps);
    std::array<double, 3> x{}, y{};
    for (int i = 0; i < 3; ++i) {
        x[static_cast<std::size_t>(i)] = p.z[static_cast<std::size_t>(i)].real();
        y[static_cast<std::size_t>(i)] = p.z[static_cast<std::size_t>(i)].imag();
    }
    double norm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (norm <= kCausticThreshold)
        throw DomainError("caustic_point", "front projection undefined: |Re z| below threshold");
    double f = (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) / norm;
    double scale = std::exp(f) / norm;
    return {scale * x[0], scale * x[1], scale * x[2]};
}

enum class Change { base, fiber };

/// The base change (1/4)(-1 1 1; 1 -1 1; 1 1 -1) and the fiber change
/// (1/2)(0 1 1; 1 0 1; 1 1 0), as exact rational maps.
inline std::array<Rational, 9> change_matrix(Change which) {
    if (which == Change::base) {
        Rational q(1, 4);
        return {-q, q, q, q, -q, q, q, q, -q};
    }
    Rational h(1, 2);
    return {0, h, h, h, 0, h, h, h, 0};
}

inline std::array<Rational, 3> apply_change(const std::array<Rational, 3>& v, Change which) {
    auto m = change_matrix(which);
    std::array<Rational, 3> out{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out[i] += m[3 * i + j] * v[j];
    return out;
}

inline std::array<double, 3> apply_change(const std::array<double, 3>& v, Change which) {
    std::array<double, 3> out{};
    auto m = change_matrix(which);
    for (std::size_t i = 0; i < 3; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < 3; ++j) acc += static_cast<double>(m[3 * i + j]) * v[j];
        out[i] = acc;
    }
    return out;
}

/// Cohomology class in H^1 of the link attached to the i-th asymptotically
/// conical smoothing: (pi d, 0), (0, pi d), (-pi d, -pi d).
struct SmoothingClass {
    int index;
    double delta;
    std::array<double, 2> value;
};

inline SmoothingClass smoothing_class(int i, double delta) {
    if (delta <= 0) throw DomainError("bad_parameter", "smoothing_class requires delta > 0");
    double pd = std::numbers::pi * delta;
    switch (i) {
        case 1: return {1, delta, {pd, 0.0}};
        case 2: return {2, delta, {0.0, pd}};
        case 3: return {3, delta, {-pd, -pd}};
        default: throw DomainError("bad_index", "smoothing index must be in {1,2,3}");
    }
}

/// Generators of H_1 of the link inside H_1(L'): the classes m_0 and -l_0.
inline std::pair<H1Class, H1Class> link_cycle_classes() {
    return {meridian(0), -longitude(0)};
}

/// Values of a smoothing 1-form on (m_0, l_0), as rational multiples of eps.
struct FillingData {
    Rational alpha_m0;
    Rational alpha_l0;
};

/// The three 1-form tables from the smoothing construction, as multiples
/// of eps: alpha_1 -> (0, 2), alpha_2 -> (2, -2), alpha_3 -> (-2, 0).
inline FillingData alpha_table(int i) {
    switch (i) {
        case 1: return {0, 2};
        case 2: return {2, -2};
        case 3: return {-2, 0};
        default: throw DomainError("bad_index", "alpha table index must be in {1,2,3}");
    }
}

/// Dehn filling slope p/q: the primitive class p m_0 + q l_0 annihilated by
/// alpha, normalized so q >= 0 and p = 1 when q = 0 (the infinity slope).
struct Slope {
    std::int64_t p;
    std::int64_t q;  // q == 0 encodes the infinity slope

    bool is_infinity() const { return q == 0; }
    bool operator==(const Slope&) const = default;

    std::string to_string() const {
        if (q == 0) return "inf";
        if (q == 1) return std::to_string(p);
        return std::to_string(p) + "/" + std::to_string(q);
    }
};

inline Slope filling_slope(const FillingData& d) {
    if (d.alpha_m0 == 0 && d.alpha_l0 == 0)
        throw DomainError("bad_parameter", "filling data must not vanish on both generators");
    // p*a + q*b = 0 has primitive solution (p, q) proportional to (b, -a)
    BigInt num_b = numerator(d.alpha_l0) * denominator(d.alpha_m0);
    BigInt num_a = numerator(d.alpha_m0) * denominator(d.alpha_l0);
    BigInt p = num_b, q = -num_a;
    BigInt g = gcd(abs(p), abs(q));
    if (g != 0) {
        p /= g;
        q /= g;
    }
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    if (q == 0) p = 1;
    return {static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)};
}

/// Caustic tetrahedron of the front projection: four labeled vertices
/// (+,+,+), (-,+,+), (-,-,+), (-,-,-) scaled by sqrt(eps/3), plus the image
/// graph under the base change for side-by-side inspection.
inline std::array<std::array<double, 3>, 4> caustic_tetrahedron(double eps) {
    double r = std::sqrt(eps / 3.0);
    return {{{r, r, r}, {-r, r, r}, {-r, -r, r}, {-r, -r, -r}}};
}

inline std::array<std::array<double, 3>, 4> caustic_tetrahedron_images(double eps) {
    auto verts = caustic_tetrahedron(eps);
    std::array<std::array<double, 3>, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = apply_change(verts[k], Change::base);
    return out;
}

} // namespace hl
} // namespace tropmirror
