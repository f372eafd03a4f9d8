#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tropmirror/chainlink.hpp"
#include "tropmirror/field.hpp"
#include "tropmirror/graded_complex.hpp"

namespace tropmirror {
namespace mirror {

/// Rank-one local system on the chain-link complement, stored by its
/// meridian holonomies (mu_0, ..., mu_4). All entries nonzero, one field.
class LocalSystem {
  public:
    explicit LocalSystem(std::array<FieldElement, 5> mu) : mu_(std::move(mu)) {
        for (const auto& m : mu_) {
            if (!(m.field() == mu_[0].field()))
                throw DomainError("mixed_field", "holonomies live in different fields");
            if (m.is_zero())
                throw DomainError("zero_holonomy", "local system holonomies must be nonzero");
        }
    }

    const Field& field() const { return mu_[0].field(); }
    const FieldElement& mu(int i) const { return mu_.at(static_cast<std::size_t>(i)); }
    const std::array<FieldElement, 5>& holonomies() const { return mu_; }

    /// Longitude holonomy via the meridian relations.
    FieldElement lambda(int i) const { return holonomy(longitude(i), mu_); }

  private:
    std::array<FieldElement, 5> mu_;
};

/// The weighted teardrop count 1 + mu_0^{-1} + mu_0^{-1} lambda_0^{-1}
/// (with lambda_0^{-1} = mu_1 mu_4); the brane is unobstructed iff this
/// vanishes.
inline FieldElement curvature(const LocalSystem& l) {
    FieldElement one = FieldElement::one(l.field());
    FieldElement mu0_inv = inv(l.mu(0));
    return one + mu0_inv + mu0_inv * l.mu(1) * l.mu(4);
}

inline bool unobstructed(const LocalSystem& l) { return curvature(l).is_zero(); }

/// Holonomies of the restriction to the i-th pants slice, in the order
/// (rho_{i,j}, rho_{i,k}) with j < k complementary to i.
inline std::pair<FieldElement, FieldElement> restricted_holonomies(const LocalSystem& l, int i) {
    switch (i) {
        case 1: return {inv(l.lambda(3)), l.mu(2)};
        case 2: return {inv(l.mu(3) * l.lambda(3)), l.lambda(1)};
        case 3: return {l.mu(2) * l.lambda(2), l.mu(1) * l.lambda(1)};
        default: throw DomainError("bad_index", "slice index must be in {1,2,3}");
    }
}

/// The linear relation a_j x_j + a_k x_k + c = 0 cutting out the support in
/// the two variables complementary to x_i, with its sign configuration.
struct SupportRelation {
    int index;        // i in {1,2,3}
    int j, k;         // the two variable indices, j < k
    FieldElement a_j, a_k, c;
    std::array<int, 3> signs;  // signs of the three monomials as printed

    /// Evaluates a_j x_j + a_k x_k + c at a point (x_1, x_2, x_3).
    FieldElement eval(const std::array<FieldElement, 3>& x) const {
        return a_j * x[static_cast<std::size_t>(j - 1)] + a_k * x[static_cast<std::size_t>(k - 1)] + c;
    }
};

/// The printed relations:
///   (i)   lambda_3 x_2 - mu_2^{-1} x_3 + 1 = 0
///   (ii)  -mu_3 lambda_3 x_1 + lambda_1^{-1} x_3 + 1 = 0
///   (iii) mu_2^{-1} lambda_2^{-1} x_1 - mu_1^{-1} lambda_1^{-1} x_2 + 1 = 0
inline SupportRelation support_relation(const LocalSystem& l, int i) {
    FieldElement one = FieldElement::one(l.field());
    switch (i) {
        case 1: return {1, 2, 3, l.lambda(3), -inv(l.mu(2)), one, {+1, -1, +1}};
        case 2: return {2, 1, 3, -(l.mu(3) * l.lambda(3)), inv(l.lambda(1)), one, {-1, +1, +1}};
        case 3:
            return {3, 1, 2, inv(l.mu(2) * l.lambda(2)), -inv(l.mu(1) * l.lambda(1)), one,
                    {+1, -1, +1}};
        default: throw DomainError("bad_index", "relation index must be in {1,2,3}");
    }
}

// ------------------------------ Pluecker side ------------------------------

/// Projective coordinates (phi_12, phi_13, phi_14, phi_23, phi_24, phi_34)
/// of a line in P^3; generic when all six are nonzero.
struct PlueckerPoint {
    std::array<FieldElement, 6> phi;

    const FieldElement& p12() const { return phi[0]; }
    const FieldElement& p13() const { return phi[1]; }
    const FieldElement& p14() const { return phi[2]; }
    const FieldElement& p23() const { return phi[3]; }
    const FieldElement& p24() const { return phi[4]; }
    const FieldElement& p34() const { return phi[5]; }

    bool generic() const {
        for (const auto& x : phi)
            if (x.is_zero()) return false;
        return true;
    }
};

/// The monomial embedding of a local system into Pluecker coordinates:
/// phi_12 = mu_1^{-1} mu_2^{-1} mu_4, phi_13 = -mu_1^{-1} mu_2^{-1},
/// phi_14 = mu_1^{-1}, phi_23 = mu_0 mu_1^{-1} mu_2^{-1} mu_3^{-1},
/// phi_24 = mu_1^{-1} mu_3^{-1}, phi_34 = mu_3^{-1}.
inline PlueckerPoint pluecker_embed(const LocalSystem& l) {
    FieldElement m1i = inv(l.mu(1)), m2i = inv(l.mu(2)), m3i = inv(l.mu(3));
    return {{m1i * m2i * l.mu(4), -(m1i * m2i), m1i, l.mu(0) * m1i * m2i * m3i, m1i * m3i, m3i}};
}

/// The Grassmann-Pluecker combination phi_12 phi_34 - phi_13 phi_24 + phi_14 phi_23.
inline FieldElement pluecker_relation(const PlueckerPoint& p) {
    return p.p12() * p.p34() - p.p13() * p.p24() + p.p14() * p.p23();
}

/// Inverts the embedding on generic lines. The projective representative is
/// normalized by the scale c = phi_24/(phi_14 phi_34), which restores the
/// identity phi_24 = phi_14 phi_34 satisfied by every embedded system.
inline LocalSystem localsystem_from_line(const PlueckerPoint& input) {
    bool all_zero = true;
    for (const auto& x : input.phi) all_zero = all_zero && x.is_zero();
    if (all_zero) throw DomainError("not_a_line", "zero Pluecker vector");
    if (!input.generic())
        throw DomainError("non_generic_line", "a Pluecker coordinate vanishes");

    FieldElement scale = input.p24() / (input.p14() * input.p34());
    PlueckerPoint p;
    for (std::size_t i = 0; i < 6; ++i) p.phi[i] = scale * input.phi[i];

    if (!pluecker_relation(p).is_zero())
        throw DomainError("not_a_line", "Grassmann-Pluecker relation is violated");

    FieldElement mu1 = inv(p.p14());
    FieldElement mu3 = inv(p.p34());
    FieldElement mu2 = inv(-(p.p13() / p.p14()));
    FieldElement mu4 = -(p.p12() / p.p13());
    FieldElement mu0 = -(p.p23() / (p.p13() * p.p34()));
    return LocalSystem({mu0, mu1, mu2, mu3, mu4});
}

// ----------------------------- Floer complexes ------------------------------

/// Cohomology ranks of the Koszul-type complex on m generators with
/// differential given by wedging with the covector (z_i - alpha_i); ranks
/// are all zero unless z = alpha, where they are binomial(m, d).
inline std::vector<std::size_t> koszul_hf(const std::vector<FieldElement>& alpha,
                                          const std::vector<FieldElement>& z) {
    if (alpha.empty() || alpha.size() != z.size())
        throw DomainError("bad_shape", "koszul_hf needs matching nonempty vectors");
    if (alpha.size() > 20)
        throw DomainError("bad_shape", "koszul_hf supports at most 20 generators");
    const Field f = alpha[0].field();
    for (const auto& a : alpha)
        if (a.is_zero()) throw DomainError("zero_holonomy", "alpha entries must be nonzero");
    for (const auto& x : z)
        if (x.is_zero()) throw DomainError("zero_holonomy", "z entries must be nonzero");

    const std::size_t m = alpha.size();
    std::vector<FieldElement> omega;
    for (std::size_t i = 0; i < m; ++i) omega.push_back(z[i] - alpha[i]);

    // basis of degree d: subsets of {0..m-1} of size d, ordered by their bitmask
    std::vector<std::vector<std::uint32_t>> basis(m + 1);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
        basis[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);

    std::vector<std::size_t> dims(m + 1);
    for (std::size_t d = 0; d <= m; ++d) dims[d] = basis[d].size();

    std::vector<Matrix> diffs;
    for (std::size_t d = 0; d < m; ++d) {
        Matrix diff(dims[d + 1], dims[d], f);
        std::map<std::uint32_t, std::size_t> col_of, row_of;
        for (std::size_t c = 0; c < basis[d].size(); ++c) col_of[basis[d][c]] = c;
        for (std::size_t r = 0; r < basis[d + 1].size(); ++r) row_of[basis[d + 1][r]] = r;
        for (std::uint32_t mask : basis[d]) {
            for (std::size_t i = 0; i < m; ++i) {
                if (mask & (1u << i)) continue;
                // sign of e_i wedged past the smaller generators in the subset
                int below = __builtin_popcount(mask & ((1u << i) - 1));
                FieldElement coeff = below % 2 == 0 ? omega[i] : -omega[i];
                diff.at(row_of[mask | (1u << i)], col_of[mask]) += coeff;
            }
        }
        diffs.push_back(std::move(diff));
    }

    GradedComplex complex(0, dims, diffs);
    auto ranks = complex.cohomology_ranks();
    std::vector<std::size_t> out(m + 1);
    for (std::size_t d = 0; d <= m; ++d) out[d] = ranks[static_cast<int>(d)];
    return out;
}

/// The two-term pants complex: ranks (1,1) iff
/// s_1 rho_1^{-1} z_1 + s_2 rho_2^{-1} z_2 + s_3 = 0, else (0,0).
inline std::pair<std::size_t, std::size_t> pants_hf(
    const std::pair<FieldElement, FieldElement>& rho,
    const std::pair<FieldElement, FieldElement>& z, std::array<int, 3> signs = {+1, +1, +1}) {
    if (rho.first.is_zero() || rho.second.is_zero() || z.first.is_zero() || z.second.is_zero())
        throw DomainError("zero_holonomy", "pants_hf inputs must be nonzero");
    for (int s : signs)
        if (s != 1 && s != -1) throw DomainError("bad_parameter", "signs must be +-1");

    const Field f = rho.first.field();
    FieldElement entry = FieldElement::zero(f);
    auto signed_term = [&](int s, const FieldElement& v) { return s > 0 ? v : -v; };
    entry += signed_term(signs[0], inv(rho.first) * z.first);
    entry += signed_term(signs[1], inv(rho.second) * z.second);
    entry += signed_term(signs[2], FieldElement::one(f));

    Matrix d(1, 1, f);
    d.at(0, 0) = entry;
    auto ranks = GradedComplex(0, {1, 1}, {d}).cohomology_ranks();
    return {ranks[0], ranks[1]};
}

/// Default sign configurations of the three printed relations.
inline std::array<int, 3> default_signs(int i) {
    switch (i) {
        case 1: return {+1, -1, +1};
        case 2: return {-1, +1, +1};
        case 3: return {+1, -1, +1};
        default: throw DomainError("bad_index", "relation index must be in {1,2,3}");
    }
}

/// The three pants-complex rank pairs testing a point x of the mirror torus
/// against an unobstructed brane; all three nonzero iff x satisfies all
/// three support relations.
inline std::array<std::pair<std::size_t, std::size_t>, 3> hf_support_check(
    const LocalSystem& l, const std::array<FieldElement, 3>& x) {
    if (!unobstructed(l))
        throw DomainError("obstructed_brane", "hf_support_check requires curvature zero");
    for (const auto& c : x)
        if (c.is_zero()) throw DomainError("zero_holonomy", "point coordinates must be nonzero");

    std::array<std::pair<std::size_t, std::size_t>, 3> out;
    for (int i = 1; i <= 3; ++i) {
        auto rel = support_relation(l, i);
        auto rho = restricted_holonomies(l, i);
        std::pair<FieldElement, FieldElement> z = {x[static_cast<std::size_t>(rel.j - 1)],
                                                   x[static_cast<std::size_t>(rel.k - 1)]};
        out[static_cast<std::size_t>(i - 1)] = pants_hf(rho, z, rel.signs);
    }
    return out;
}

// ------------------------------- support sets -------------------------------

using SupportPoint = std::array<std::int64_t, 3>;

namespace detail {

inline void require_unobstructed_prime(const LocalSystem& l, std::int64_t p) {
    if (l.field().kind() != Field::Kind::prime || l.field().modulus() != p)
        throw DomainError("bad_field", "local system must live over F_p");
    if (!unobstructed(l)) throw DomainError("obstructed_brane", "curvature is nonzero");
}

} // namespace detail

/// Support of the brane over F_p via exact linear solving: the solutions of
/// the three support relations inside (F_p^*)^3, sorted lexicographically.
inline std::vector<SupportPoint> support_points(const LocalSystem& l, std::int64_t p) {
    detail::require_unobstructed_prime(l, p);
    const Field f = l.field();

    Matrix a(3, 3, f);
    std::vector<FieldElement> b(3, FieldElement::zero(f));
    for (int i = 1; i <= 3; ++i) {
        auto rel = support_relation(l, i);
        a.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(rel.j - 1)) = rel.a_j;
        a.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(rel.k - 1)) = rel.a_k;
        b[static_cast<std::size_t>(i - 1)] = -rel.c;
    }

    std::set<SupportPoint> points;
    auto sol = solve_affine(a, b);
    if (sol.consistent) {
        // walk the affine solution set (the kernel is at most a line here)
        std::size_t combos = 1;
        for (std::size_t i = 0; i < sol.kernel_basis.size(); ++i) combos *= static_cast<std::size_t>(p);
        for (std::size_t code = 0; code < combos; ++code) {
            auto x = sol.basepoint;
            std::size_t rest = code;
            for (const auto& k : sol.kernel_basis) {
                FieldElement t = FieldElement::residue(static_cast<std::int64_t>(rest % p), f);
                rest /= static_cast<std::size_t>(p);
                for (std::size_t j = 0; j < 3; ++j) x[j] += t * k[j];
            }
            if (x[0].is_zero() || x[1].is_zero() || x[2].is_zero()) continue;
            points.insert({x[0].residue_value(), x[1].residue_value(), x[2].residue_value()});
        }
    }
    return {points.begin(), points.end()};
}

/// Independent oracle: exhaustively evaluates the three relations on all of
/// (F_p^*)^3 with no linear solving.
inline std::vector<SupportPoint> brute_force_support(const LocalSystem& l, std::int64_t p) {
    detail::require_unobstructed_prime(l, p);
    const Field f = l.field();
    std::array<SupportRelation, 3> rels = {support_relation(l, 1), support_relation(l, 2),
                                           support_relation(l, 3)};
    std::vector<SupportPoint> out;
    for (std::int64_t x1 = 1; x1 < p; ++x1)
        for (std::int64_t x2 = 1; x2 < p; ++x2)
            for (std::int64_t x3 = 1; x3 < p; ++x3) {
                std::array<FieldElement, 3> x = {FieldElement::residue(x1, f),
                                                 FieldElement::residue(x2, f),
                                                 FieldElement::residue(x3, f)};
                bool all = true;
                for (const auto& rel : rels) all = all && rel.eval(x).is_zero();
                if (all) out.push_back({x1, x2, x3});
            }
    return out;
}

/// All unobstructed local systems over F_p, i.e. tuples with
/// mu_0 = -(1 + mu_1 mu_4) nonzero.
inline std::vector<LocalSystem> unobstructed_local_systems(std::int64_t p) {
    const Field f = Field::prime(p);
    std::vector<LocalSystem> out;
    for (std::int64_t m1 = 1; m1 < p; ++m1)
        for (std::int64_t m2 = 1; m2 < p; ++m2)
            for (std::int64_t m3 = 1; m3 < p; ++m3)
                for (std::int64_t m4 = 1; m4 < p; ++m4) {
                    FieldElement mu1 = FieldElement::residue(m1, f);
                    FieldElement mu4 = FieldElement::residue(m4, f);
                    FieldElement mu0 = -(FieldElement::one(f) + mu1 * mu4);
                    if (mu0.is_zero()) continue;
                    out.push_back(LocalSystem({mu0, mu1, FieldElement::residue(m2, f),
                                               FieldElement::residue(m3, f), mu4}));
                }
    return out;
}

// ---------------------------- generator spectrum ----------------------------

/// Interior generator ranks per degree for the doubled brane: the negative
/// sheet carries the Morse counts shifted up by one, the positive sheet
/// shifted down by one, plus H^*(T^2)[-2] and H^*(T^2)[1] from the torus of
/// clean self-intersection ([s] moves degree d to d - s).
struct GeneratorSpectrum {
    std::map<int, std::size_t> negative_sheet;
    std::map<int, std::size_t> positive_sheet;
    std::map<int, std::size_t> torus_summands;

    std::map<int, std::size_t> total() const {
        std::map<int, std::size_t> out;
        for (const auto* part : {&negative_sheet, &positive_sheet, &torus_summands})
            for (const auto& [deg, cnt] : *part) out[deg] += cnt;
        return out;
    }
};

inline GeneratorSpectrum generator_spectrum(const std::array<std::int64_t, 3>& morse_counts) {
    for (auto c : morse_counts)
        if (c < 0) throw DomainError("bad_parameter", "Morse counts must be nonnegative");
    GeneratorSpectrum s;
    for (int k = 0; k < 3; ++k) {
        auto c = static_cast<std::size_t>(morse_counts[static_cast<std::size_t>(k)]);
        if (c == 0) continue;
        s.negative_sheet[k + 1] += c;
        s.positive_sheet[k - 1] += c;
    }
    const std::array<std::size_t, 3> torus_ranks = {1, 2, 1};  // H^*(T^2)
    for (int d = 0; d < 3; ++d) {
        s.torus_summands[d + 2] += torus_ranks[static_cast<std::size_t>(d)];  // [-2]
        s.torus_summands[d - 1] += torus_ranks[static_cast<std::size_t>(d)];  // [1]
    }
    return s;
}

} // namespace mirror
} // namespace tropmirror
