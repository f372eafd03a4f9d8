#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tropmirror/field.hpp"

namespace tropmirror {

/// A weighted rational graph in R^n: rays (one endpoint) and segments (two),
/// each carrying a primitive integer direction and a positive integer weight.
struct TropicalEdge {
    std::size_t v0 = 0;
    std::optional<std::size_t> v1;  // absent => ray
    std::vector<std::int64_t> dir;
    std::int64_t weight = 1;
};

class TropicalCurve {
  public:
    TropicalCurve(std::size_t dim, std::vector<std::vector<Rational>> vertices,
                  std::vector<TropicalEdge> edges)
        : dim_(dim), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        for (const auto& v : vertices_)
            if (v.size() != dim_) throw DomainError("bad_curve", "vertex dimension mismatch");
        for (const auto& e : edges_) {
            if (e.dir.size() != dim_) throw DomainError("bad_curve", "direction dimension mismatch");
            if (e.weight < 1) throw DomainError("bad_curve", "edge weight must be >= 1");
            if (e.v0 >= vertices_.size() || (e.v1 && *e.v1 >= vertices_.size()))
                throw DomainError("bad_curve", "edge references missing vertex");
            std::int64_t g = 0;
            for (auto d : e.dir) g = std::gcd(g, std::llabs(d));
            if (g != 1) throw DomainError("bad_curve", "edge direction is not primitive");
            if (e.v1) {
                // second endpoint minus first must be a positive multiple of dir
                std::optional<Rational> scale;
                for (std::size_t i = 0; i < dim_; ++i) {
                    Rational diff = vertices_[*e.v1][i] - vertices_[e.v0][i];
                    if (e.dir[i] == 0) {
                        if (diff != 0)
                            throw DomainError("bad_curve", "segment not parallel to direction");
                    } else {
                        Rational s = diff / e.dir[i];
                        if (scale && *scale != s)
                            throw DomainError("bad_curve", "segment not parallel to direction");
                        scale = s;
                    }
                }
                if (!scale || *scale <= 0)
                    throw DomainError("bad_curve", "segment direction must point from v0 to v1");
            }
        }
    }

    std::size_t dim() const { return dim_; }
    const std::vector<std::vector<Rational>>& vertices() const { return vertices_; }
    const std::vector<TropicalEdge>& edges() const { return edges_; }

  private:
    std::size_t dim_;
    std::vector<std::vector<Rational>> vertices_;
    std::vector<TropicalEdge> edges_;
};

/// Per-vertex balancing residual: the integer sum of w_s u_s over incident
/// edges, segment directions re-oriented outward. Balanced iff all zero.
inline std::vector<std::vector<std::int64_t>> check_balancing(const TropicalCurve& c) {
    std::vector<std::vector<std::int64_t>> residuals(
        c.vertices().size(), std::vector<std::int64_t>(c.dim(), 0));
    for (const auto& e : c.edges()) {
        for (std::size_t i = 0; i < c.dim(); ++i) residuals[e.v0][i] += e.weight * e.dir[i];
        if (e.v1)
            for (std::size_t i = 0; i < c.dim(); ++i) residuals[*e.v1][i] -= e.weight * e.dir[i];
    }
    return residuals;
}

inline bool is_balanced(const TropicalCurve& c) {
    for (const auto& r : check_balancing(c))
        for (auto x : r)
            if (x != 0) return false;
    return true;
}

/// The 4-valent model curve V: one vertex at the origin with legs
/// (-1,0,0), (0,-1,0), (0,0,-1), (1,1,1), all of weight 1.
inline TropicalCurve standard_four_valent() {
    std::vector<std::vector<Rational>> verts = {{0, 0, 0}};
    std::vector<TropicalEdge> edges = {
        {0, std::nullopt, {-1, 0, 0}, 1},
        {0, std::nullopt, {0, -1, 0}, 1},
        {0, std::nullopt, {0, 0, -1}, 1},
        {0, std::nullopt, {1, 1, 1}, 1},
    };
    return TropicalCurve(3, std::move(verts), std::move(edges));
}

/// The trivalent pair-of-pants curve in R^2 with legs (-1,0), (0,-1), (1,1).
inline TropicalCurve standard_pants() {
    std::vector<std::vector<Rational>> verts = {{0, 0}};
    std::vector<TropicalEdge> edges = {
        {0, std::nullopt, {-1, 0}, 1},
        {0, std::nullopt, {0, -1}, 1},
        {0, std::nullopt, {1, 1}, 1},
    };
    return TropicalCurve(2, std::move(verts), std::move(edges));
}

/// Resolution V_i of V: the 4-valent vertex is replaced by two trivalent
/// vertices joined by a finite edge of lattice length 2*eps. V_3 is the
/// curve with vertices (-eps,-eps,0), (eps,eps,0); V_1 and V_2 are its
/// cyclic coordinate permutations.
inline TropicalCurve resolution(int i, const Rational& eps) {
    if (i < 1 || i > 3) throw DomainError("bad_index", "resolution index must be in {1,2,3}");
    if (eps <= 0) throw DomainError("bad_parameter", "resolution requires eps > 0");

    // V_3 data; permute coordinates right-cyclically (x,y,z)->(z,x,y) per step.
    std::vector<std::vector<Rational>> verts = {{-eps, -eps, 0}, {eps, eps, 0}};
    std::vector<TropicalEdge> edges = {
        {0, std::nullopt, {-1, 0, 0}, 1},
        {0, std::nullopt, {0, -1, 0}, 1},
        {0, std::optional<std::size_t>(1), {1, 1, 0}, 1},
        {1, std::nullopt, {0, 0, -1}, 1},
        {1, std::nullopt, {1, 1, 1}, 1},
    };
    int shifts = i % 3;  // V_3 -> 0 shifts, V_1 -> 1, V_2 -> 2
    for (int s = 0; s < shifts; ++s) {
        for (auto& v : verts) v = {v[2], v[0], v[1]};
        for (auto& e : edges) e.dir = {e.dir[2], e.dir[0], e.dir[1]};
    }
    return TropicalCurve(3, std::move(verts), std::move(edges));
}

/// Euclidean distance from p to the union of edges, in double precision.
inline double distance_to_curve(const std::vector<double>& p, const TropicalCurve& c) {
    if (p.size() != c.dim()) throw DomainError("bad_shape", "point dimension mismatch");
    auto vertex_d = [&](std::size_t vi) {
        std::vector<double> v(c.dim());
        for (std::size_t k = 0; k < c.dim(); ++k)
            v[k] = static_cast<double>(c.vertices()[vi][k]);
        return v;
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : c.edges()) {
        std::vector<double> a = vertex_d(e.v0);
        std::vector<double> u(c.dim());
        for (std::size_t k = 0; k < c.dim(); ++k) u[k] = static_cast<double>(e.dir[k]);
        double uu = 0, up = 0;
        for (std::size_t k = 0; k < c.dim(); ++k) {
            uu += u[k] * u[k];
            up += u[k] * (p[k] - a[k]);
        }
        double t = up / uu;
        if (t < 0) t = 0;
        if (e.v1) {
            // clamp to the segment's parameter range
            std::vector<double> b = vertex_d(*e.v1);
            double tmax = 0;
            for (std::size_t k = 0; k < c.dim(); ++k)
                if (u[k] != 0) tmax = (b[k] - a[k]) / u[k];
            if (t > tmax) t = tmax;
        }
        double d2 = 0;
        for (std::size_t k = 0; k < c.dim(); ++k) {
            double diff = p[k] - (a[k] + t * u[k]);
            d2 += diff * diff;
        }
        best = std::min(best, std::sqrt(d2));
    }
    return best;
}

// --------------------------- JSON serialization ----------------------------
// {"dim": n, "vertices": [["p/q", ...], ...],
//  "edges": [{"v0": i, "v1": j (optional), "dir": [ints], "weight": w}, ...]}

inline std::string rational_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

inline Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash)), den(text.substr(slash + 1));
        if (den == 0) throw DomainError("parse_error", "zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const DomainError*>(&e)) throw;
        throw DomainError("parse_error", "invalid rational '" + text + "'");
    }
}

inline nlohmann::json to_json(const TropicalCurve& c) {
    nlohmann::json j;
    j["dim"] = c.dim();
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : c.vertices()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : v) row.push_back(rational_to_string(x));
        j["vertices"].push_back(row);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : c.edges()) {
        nlohmann::json je;
        je["v0"] = e.v0;
        if (e.v1) je["v1"] = *e.v1;
        je["dir"] = e.dir;
        je["weight"] = e.weight;
        j["edges"].push_back(je);
    }
    return j;
}

inline TropicalCurve curve_from_json(const nlohmann::json& j) {
    try {
        std::size_t dim = j.at("dim").get<std::size_t>();
        std::vector<std::vector<Rational>> verts;
        for (const auto& row : j.at("vertices")) {
            std::vector<Rational> v;
            for (const auto& x : row) v.push_back(rational_from_string(x.get<std::string>()));
            verts.push_back(std::move(v));
        }
        std::vector<TropicalEdge> edges;
        for (const auto& je : j.at("edges")) {
            TropicalEdge e;
            e.v0 = je.at("v0").get<std::size_t>();
            if (je.contains("v1")) e.v1 = je.at("v1").get<std::size_t>();
            e.dir = je.at("dir").get<std::vector<std::int64_t>>();
            e.weight = je.value("weight", std::int64_t(1));
            edges.push_back(std::move(e));
        }
        return TropicalCurve(dim, std::move(verts), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("parse_error", std::string("invalid curve document: ") + e.what());
    }
}

} // namespace tropmirror
