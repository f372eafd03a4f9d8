#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "tropmirror/field.hpp"
#include "tropmirror/graded_complex.hpp"
#include "tropmirror/matrix.hpp"

using namespace tropmirror;

namespace {

FieldElement q(std::int64_t n) { return FieldElement::rational(n); }
FieldElement q(std::int64_t n, std::int64_t d) { return FieldElement::rational(n, d); }

FieldElement random_element(const Field& f, std::mt19937_64& rng, bool nonzero = false) {
    if (f.kind() == Field::Kind::prime) {
        std::uniform_int_distribution<std::int64_t> dist(nonzero ? 1 : 0, f.modulus() - 1);
        return FieldElement::residue(dist(rng), f);
    }
    std::uniform_int_distribution<std::int64_t> num(-20, 20);
    std::uniform_int_distribution<std::int64_t> den(1, 12);
    FieldElement e = q(num(rng), den(rng));
    if (nonzero && e.is_zero()) e = q(1);
    return e;
}

// Independent cohomology oracle for small complexes over F_p: enumerate all
// vectors in each graded piece, count kernel elements and distinct images.
std::map<int, std::size_t> brute_force_cohomology(const GradedComplex& c, std::int64_t p) {
    const Field f = Field::prime(p);
    auto enumerate = [&](std::size_t dim) {
        std::vector<std::vector<FieldElement>> all;
        std::size_t total = 1;
        for (std::size_t i = 0; i < dim; ++i) total *= static_cast<std::size_t>(p);
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<FieldElement> v;
            std::size_t rest = code;
            for (std::size_t i = 0; i < dim; ++i) {
                v.push_back(FieldElement::residue(static_cast<std::int64_t>(rest % p), f));
                rest /= p;
            }
            all.push_back(std::move(v));
        }
        return all;
    };
    auto key = [](const std::vector<FieldElement>& v) {
        std::vector<std::int64_t> k;
        for (const auto& e : v) k.push_back(e.residue_value());
        return k;
    };
    auto log_p = [&](std::size_t count) {
        std::size_t e = 0;
        while (count > 1) {
            count /= static_cast<std::size_t>(p);
            ++e;
        }
        return e;
    };

    std::map<int, std::size_t> ker_dim, im_dim;
    for (int d = c.d_min(); d <= c.d_max(); ++d) {
        if (d == c.d_max()) {
            ker_dim[d] = c.dim(d);
            continue;
        }
        std::size_t kers = 0;
        std::set<std::vector<std::int64_t>> images;
        for (const auto& v : enumerate(c.dim(d))) {
            auto w = c.diff(d).apply(v);
            bool zero = true;
            for (const auto& e : w) zero = zero && e.is_zero();
            if (zero) ++kers;
            images.insert(key(w));
        }
        ker_dim[d] = log_p(kers);
        im_dim[d] = log_p(images.size());
    }
    std::map<int, std::size_t> out;
    for (int d = c.d_min(); d <= c.d_max(); ++d)
        out[d] = ker_dim[d] - (d > c.d_min() ? im_dim[d - 1] : 0);
    return out;
}

GradedComplex two_term(FieldElement entry) {
    Matrix d(1, 1, entry.field());
    d.at(0, 0) = entry;
    return GradedComplex(0, {1, 1}, {d});
}

} // namespace

TEST_CASE("field element inverses") {
    CHECK(inv(q(1)) == q(1));
    CHECK(inv(q(-2)) == q(-1, 2));

    // brute-force oracle over F_7: the unique x with 3x = 1
    Field f7 = Field::prime(7);
    FieldElement three = FieldElement::residue(3, f7);
    FieldElement expected = FieldElement::zero(f7);
    for (std::int64_t x = 1; x < 7; ++x)
        if ((three * FieldElement::residue(x, f7)).is_one()) expected = FieldElement::residue(x, f7);
    CHECK(expected == FieldElement::residue(5, f7));
    CHECK(inv(three) == expected);

    CHECK_THROWS_AS(inv(q(0)), DomainError);
    CHECK_THROWS_AS(q(1) / FieldElement::zero(f7), DomainError);
}

TEST_CASE("rational normal form and parsing") {
    CHECK(q(2, 4) == q(1, 2));
    CHECK(q(3, -6) == q(-1, 2));
    CHECK(q(3, -6).to_string() == "-1/2");
    CHECK(q(8, 4).to_string() == "2");
    CHECK(FieldElement::parse("-7/2", Field::rationals()) == q(-7, 2));
    Field f11 = Field::prime(11);
    CHECK(FieldElement::parse("-3", f11) == FieldElement::residue(8, f11));
    CHECK_THROWS_AS(FieldElement::parse("x", Field::rationals()), DomainError);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(2024);
    std::vector<Field> fields = {Field::rationals(), Field::prime(3), Field::prime(5),
                                 Field::prime(7), Field::prime(11)};
    for (const auto& f : fields) {
        for (int trial = 0; trial < 200; ++trial) {
            FieldElement a = random_element(f, rng), b = random_element(f, rng),
                         c = random_element(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == FieldElement::zero(f));
            if (!a.is_zero()) CHECK(a * inv(a) == FieldElement::one(f));
        }
    }
}

TEST_CASE("mixed fields are rejected") {
    CHECK_THROWS_AS(q(1) + FieldElement::residue(1, Field::prime(5)), DomainError);
    CHECK_THROWS_AS(
        FieldElement::residue(1, Field::prime(5)) * FieldElement::residue(1, Field::prime(7)),
        DomainError);
}

TEST_CASE("rank examples") {
    Field Q = Field::rationals();
    CHECK(rank(Matrix::identity(3, Q)) == 3);
    CHECK(rank(Matrix(2, 2, Q)) == 0);
    CHECK(rank(Matrix::from_integers(2, 2, {1, 2, 2, 4}, Q)) == 1);
}

TEST_CASE("rank invariance under row permutation and scaling") {
    std::mt19937_64 rng(99);
    for (const Field& f : {Field::rationals(), Field::prime(7)}) {
        for (int trial = 0; trial < 50; ++trial) {
            std::uniform_int_distribution<std::size_t> sz(1, 5);
            std::size_t r = sz(rng), c = sz(rng);
            Matrix m(r, c, f);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_element(f, rng);
            std::size_t base = rank(m);

            Matrix permuted = m;
            std::vector<std::size_t> perm(r);
            for (std::size_t i = 0; i < r; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) permuted.at(i, j) = m.at(perm[i], j);
            CHECK(rank(permuted) == base);

            Matrix scaled = m;
            std::size_t row = perm[0];
            FieldElement s = random_element(f, rng, /*nonzero=*/true);
            for (std::size_t j = 0; j < c; ++j) scaled.at(row, j) *= s;
            CHECK(rank(scaled) == base);
        }
    }
}

TEST_CASE("cohomology rank examples") {
    Field Q = Field::rationals();
    GradedComplex zero_diff(0, {1, 1}, {Matrix(1, 1, Q)});
    auto ranks = zero_diff.cohomology_ranks();
    CHECK(ranks[0] == 1);
    CHECK(ranks[1] == 1);

    auto iso = two_term(q(5)).cohomology_ranks();
    CHECK(iso[0] == 0);
    CHECK(iso[1] == 0);

    auto null = two_term(q(0)).cohomology_ranks();
    CHECK(null[0] == 1);
    CHECK(null[1] == 1);
}

TEST_CASE("composability is enforced") {
    Field Q = Field::rationals();
    Matrix d0 = Matrix::from_integers(1, 1, {1}, Q);
    Matrix d1 = Matrix::from_integers(1, 1, {1}, Q);
    CHECK_THROWS_AS(GradedComplex(0, {1, 1, 1}, {d0, d1}), DomainError);
    Matrix d1ok = Matrix(1, 1, Q);
    CHECK_NOTHROW(GradedComplex(0, {1, 1, 1}, {d0, d1ok}));
}

TEST_CASE("cohomology matches brute-force kernel/image enumeration") {
    std::mt19937_64 rng(7);
    for (std::int64_t p : {2, 3}) {
        Field f = Field::prime(p);
        for (int trial = 0; trial < 40; ++trial) {
            // random dims with total <= 8, then force d o d = 0 by zeroing the
            // second differential against the image of the first
            std::uniform_int_distribution<std::size_t> dd(1, 3);
            std::vector<std::size_t> dims = {dd(rng), dd(rng), dd(rng)};
            Matrix d0(dims[1], dims[0], f);
            for (std::size_t i = 0; i < dims[1]; ++i)
                for (std::size_t j = 0; j < dims[0]; ++j) d0.at(i, j) = random_element(f, rng);
            // choose d1 with rows spanning the left kernel of d0: build from
            // solve_affine on the transpose
            Matrix d0t(dims[0], dims[1], f);
            for (std::size_t i = 0; i < dims[1]; ++i)
                for (std::size_t j = 0; j < dims[0]; ++j) d0t.at(j, i) = d0.at(i, j);
            auto lk = solve_affine(d0t, std::vector<FieldElement>(dims[0], FieldElement::zero(f)));
            REQUIRE(lk.consistent);
            Matrix d1(dims[2], dims[1], f);
            for (std::size_t i = 0; i < dims[2]; ++i) {
                if (lk.kernel_basis.empty()) break;
                const auto& v = lk.kernel_basis[i % lk.kernel_basis.size()];
                FieldElement s = random_element(f, rng);
                for (std::size_t j = 0; j < dims[1]; ++j) d1.at(i, j) = s * v[j];
            }
            GradedComplex c(0, dims, {d0, d1});
            CHECK(c.cohomology_ranks() == brute_force_cohomology(c, p));
        }
    }
}

TEST_CASE("solve_affine examples") {
    Field Q = Field::rationals();
    auto unique = solve_affine(Matrix::identity(2, Q), {q(3), q(4)});
    REQUIRE(unique.consistent);
    CHECK(unique.kernel_basis.empty());
    CHECK(unique.basepoint == std::vector<FieldElement>{q(3), q(4)});

    auto empty = solve_affine(Matrix(1, 2, Q), {q(1)});
    CHECK_FALSE(empty.consistent);

    // x1 + x2 = 0 over F_7: oracle enumerates all 49 pairs
    Field f7 = Field::prime(7);
    Matrix a = Matrix::from_integers(1, 2, {1, 1}, f7);
    auto sol = solve_affine(a, {FieldElement::zero(f7)});
    REQUIRE(sol.consistent);
    REQUIRE(sol.kernel_basis.size() == 1);

    std::set<std::pair<std::int64_t, std::int64_t>> oracle, param;
    for (std::int64_t x = 0; x < 7; ++x)
        for (std::int64_t y = 0; y < 7; ++y)
            if ((x + y) % 7 == 0) oracle.insert({x, y});
    for (std::int64_t t = 0; t < 7; ++t) {
        FieldElement ft = FieldElement::residue(t, f7);
        auto p0 = sol.basepoint[0] + ft * sol.kernel_basis[0][0];
        auto p1 = sol.basepoint[1] + ft * sol.kernel_basis[0][1];
        param.insert({p0.residue_value(), p1.residue_value()});
    }
    CHECK(param == oracle);
}

TEST_CASE("solve_affine solutions satisfy the system exactly") {
    std::mt19937_64 rng(4242);
    for (const Field& f : {Field::rationals(), Field::prime(5)}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::uniform_int_distribution<std::size_t> sz(1, 4);
            std::size_t r = sz(rng), c = sz(rng);
            Matrix a(r, c, f);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) a.at(i, j) = random_element(f, rng);
            std::vector<FieldElement> b;
            for (std::size_t i = 0; i < r; ++i) b.push_back(random_element(f, rng));
            auto sol = solve_affine(a, b);
            if (!sol.consistent) continue;
            auto check = [&](const std::vector<FieldElement>& x) {
                auto ax = a.apply(x);
                for (std::size_t i = 0; i < r; ++i) CHECK(ax[i] == b[i]);
            };
            check(sol.basepoint);
            for (const auto& k : sol.kernel_basis) {
                std::vector<FieldElement> x = sol.basepoint;
                FieldElement s = random_element(f, rng);
                for (std::size_t j = 0; j < c; ++j) x[j] += s * k[j];
                check(x);
            }
        }
    }
}
