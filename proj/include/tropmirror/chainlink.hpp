#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "tropmirror/field.hpp"

namespace tropmirror {

/// Integer homology class on the minimally twisted five-chain link
/// complement, written in the meridian basis (m_0, ..., m_4).
using H1Class = std::array<std::int64_t, 5>;

inline H1Class operator+(const H1Class& a, const H1Class& b) {
    H1Class out{};
    for (int i = 0; i < 5; ++i) out[i] = a[i] + b[i];
    return out;
}
inline H1Class operator-(const H1Class& a) {
    H1Class out{};
    for (int i = 0; i < 5; ++i) out[i] = -a[i];
    return out;
}

inline H1Class meridian(int i) {
    if (i < 0 || i > 4) throw DomainError("bad_index", "meridian index must be in {0..4}");
    H1Class c{};
    c[static_cast<std::size_t>(i)] = 1;
    return c;
}

/// Longitude of the i-th link component in the meridian basis:
/// l_0 = -m_1 - m_4, l_1 = -m_0 + m_2, l_2 = m_1 - m_3,
/// l_3 = -m_2 + m_4, l_4 = -m_0 + m_3.
inline H1Class longitude(int i) {
    switch (i) {
        case 0: return {0, -1, 0, 0, -1};
        case 1: return {-1, 0, 1, 0, 0};
        case 2: return {0, 1, 0, -1, 0};
        case 3: return {0, 0, -1, 0, 1};
        case 4: return {-1, 0, 0, 1, 0};
        default: throw DomainError("bad_index", "longitude index must be in {0..4}");
    }
}

/// Induced map H_1(L') -> H_1(T^3) on the meridian basis:
/// m_0 -> 0, m_1 -> e_2 - e_3, m_2 -> e_3, m_3 -> -e_1 + e_2, m_4 -> -e_2 + e_3.
inline std::array<std::int64_t, 3> push_to_torus(const H1Class& c) {
    static constexpr std::array<std::array<std::int64_t, 3>, 5> images = {{
        {0, 0, 0},
        {0, 1, -1},
        {0, 0, 1},
        {-1, 1, 0},
        {0, -1, 1},
    }};
    std::array<std::int64_t, 3> out{};
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 3; ++k) out[k] += c[static_cast<std::size_t>(i)] * images[i][k];
    return out;
}

/// Holonomy of a rank-one local system with meridian holonomies mu on the
/// class c: the exact monomial prod mu_i^{c_i}.
inline FieldElement holonomy(const H1Class& c, const std::array<FieldElement, 5>& mu) {
    for (const auto& m : mu)
        if (m.is_zero()) throw DomainError("zero_holonomy", "holonomy entries must be nonzero");
    FieldElement out = FieldElement::one(mu[0].field());
    for (int i = 0; i < 5; ++i) out *= mu[static_cast<std::size_t>(i)].pow(c[static_cast<std::size_t>(i)]);
    return out;
}

// ------------------------- branched triangulations -------------------------

/// One tetrahedron: four vertex labels and six oriented edges, one per
/// unordered label pair (orientation = ordered pair).
struct Tetrahedron {
    std::array<int, 4> vertices{};
    std::vector<std::pair<int, int>> edges;  // exactly 6 ordered pairs
};

struct BranchedTriangulation {
    std::vector<Tetrahedron> tetrahedra;
};

struct BranchingReport {
    bool valid = true;
    // (tetrahedron index, face vertex triple) for each directed-cycle face
    std::vector<std::pair<std::size_t, std::array<int, 3>>> offending_faces;
};

/// A branching requires that no 2-face of any tetrahedron is a directed
/// cycle. Only this local condition is checked; global face pairings are
/// not part of the data.
inline BranchingReport check_branching(const BranchedTriangulation& t) {
    BranchingReport report;
    for (std::size_t ti = 0; ti < t.tetrahedra.size(); ++ti) {
        const auto& tet = t.tetrahedra[ti];
        if (tet.edges.size() != 6)
            throw DomainError("bad_triangulation", "tetrahedron needs exactly 6 oriented edges");
        std::set<std::pair<int, int>> pairs;
        std::map<std::pair<int, int>, std::pair<int, int>> orient;  // unordered -> ordered
        for (const auto& [a, b] : tet.edges) {
            bool a_ok = false, b_ok = false;
            for (int v : tet.vertices) {
                a_ok = a_ok || v == a;
                b_ok = b_ok || v == b;
            }
            if (!a_ok || !b_ok || a == b)
                throw DomainError("bad_triangulation", "edge endpoints must be distinct vertex labels");
            auto key = std::minmax(a, b);
            if (!pairs.insert(key).second)
                throw DomainError("bad_triangulation", "duplicate edge pair");
            orient[key] = {a, b};
        }
        for (int f = 0; f < 4; ++f) {
            std::array<int, 3> face{};
            int k = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) face[static_cast<std::size_t>(k++)] = tet.vertices[static_cast<std::size_t>(v)];
            // the face is a cycle iff every vertex has in-degree 1 among its
            // three oriented edges
            std::map<int, int> indeg;
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    auto key = std::minmax(face[static_cast<std::size_t>(a)], face[static_cast<std::size_t>(b)]);
                    indeg[orient[key].second] += 1;
                }
            bool cycle = true;
            for (int v : face) cycle = cycle && indeg[v] == 1;
            if (cycle) {
                report.valid = false;
                report.offending_faces.push_back({ti, face});
            }
        }
    }
    return report;
}

/// Tetrahedron with every edge oriented from the lower vertex label to the
/// higher; the i-th vertex then has i-1 incoming edges.
inline Tetrahedron low_to_high_tetrahedron(std::array<int, 4> vertices = {0, 1, 2, 3}) {
    Tetrahedron t;
    t.vertices = vertices;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            t.edges.push_back({vertices[static_cast<std::size_t>(a)], vertices[static_cast<std::size_t>(b)]});
    return t;
}

} // namespace tropmirror
