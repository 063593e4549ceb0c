#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "ntype/scomplex.hpp"

using namespace ntype;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// |Delta^m_n| = # monotone maps [n] -> [m], independently of the ref calculus.
long long delta_simplex_count_oracle(int m, int n) { return binom(n + m + 1, m); }

// Nondegenerate n-cells of X x Y: pairs of plateau sets A, B in {0..n-1},
// |A| = n-p, |B| = n-q, disjoint, weighted by nondegenerate cell counts.
long long product_cells_oracle(const SSet& x, const SSet& y, int n) {
    long long total = 0;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            total += static_cast<long long>(x.cell_count(p)) * y.cell_count(q) *
                     binom(n, n - p) * binom(p, n - q);
    return total;
}

Budget big_budget() { return Budget{50'000'000, 0}; }

}  // namespace

TEST_CASE("standard simplices have binomial cell counts") {
    for (int n = 0; n <= 4; ++n) {
        auto dn = standard_simplex(n);
        for (int d = 0; d <= n; ++d) CHECK(dn->cell_count(d) == binom(n + 1, d + 1));
        dn->validate();
    }
    auto d2 = standard_simplex(2);
    CHECK(d2->cell_count(0) == 3);
    CHECK(d2->cell_count(1) == 3);
    CHECK(d2->cell_count(2) == 1);
}

TEST_CASE("boundary and horn drop the expected cells") {
    auto b2 = boundary(2);
    CHECK(b2->cell_count(0) == 3);
    CHECK(b2->cell_count(1) == 3);
    CHECK(b2->cell_count(2) == 0);
    auto h21 = horn(2, 1);
    CHECK(h21->cell_count(0) == 3);
    CHECK(h21->cell_count(1) == 2);
    CHECK(!h21->find_cell("0.2"));  // the d_1 face {0,2} is omitted
    CHECK(boundary(0)->empty());
}

TEST_CASE("simplicial identity violation is reported") {
    SSetBuilder b("bad");
    b.add_cell(0, "v0");
    b.add_cell(0, "v1");
    b.add_cell(0, "v2");
    b.add_cell(1, "a");
    b.add_cell(1, "b");
    b.set_faces(1, 0, {SSet::cell_ref(0, 1), SSet::cell_ref(0, 0)});
    b.set_faces(1, 1, {SSet::cell_ref(0, 2), SSet::cell_ref(0, 1)});
    b.add_cell(2, "t");
    // deliberately incompatible corner assignments
    b.set_faces(2, 0, {SSet::cell_ref(1, 0), SSet::cell_ref(1, 0), SSet::cell_ref(1, 1)});
    CHECK_THROWS_AS(b.build(), SimplicialIdentityViolation);
}

TEST_CASE("face/degeneracy calculus satisfies the mixed identities") {
    std::vector<SSetPtr> corpus = {standard_simplex(2), boundary(2), circle(), standard_simplex(3)};
    for (const auto& x : corpus) {
        for (int n = 1; n <= 4; ++n) {
            for (const auto& r : x->all_simplices(n)) {
                for (int j = 0; j <= n; ++j) {
                    SimplexRef sjr = x->degenerate_ref(r, j);
                    for (int i = 0; i <= n + 1; ++i) {
                        SimplexRef lhs = x->face(sjr, i);
                        SimplexRef rhs;
                        if (i < j) rhs = x->degenerate_ref(x->face(r, i), j - 1);
                        else if (i == j || i == j + 1) rhs = r;
                        else rhs = x->degenerate_ref(x->face(r, i - 1), j);
                        CHECK(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("degeneracy support equals the normal-form word") {
    std::vector<SSetPtr> corpus = {standard_simplex(2), circle(), boundary(2)};
    for (const auto& x : corpus) {
        for (int n = 1; n <= 4; ++n) {
            for (const auto& r : x->all_simplices(n)) {
                for (int j = 0; j + 1 <= n; ++j) {
                    bool direct = (x->degenerate_ref(x->face(r, j), j) == r);
                    CHECK(direct == x->in_degeneracy_image(r, j));
                }
            }
        }
    }
}

TEST_CASE("simplex enumeration matches the monotone-map oracle") {
    for (int m = 0; m <= 3; ++m) {
        auto dm = standard_simplex(m);
        for (int n = 0; n <= 5; ++n)
            CHECK(dm->count_simplices(n) == delta_simplex_count_oracle(m, n));
    }
    CHECK(standard_simplex(0)->count_simplices(3) == 1);
    auto d1 = standard_simplex(1);
    CHECK(d1->count_simplices(1) == 3);
    // bd2 at dim 2: all 10 monotone [2]->[2] minus the nondegenerate top
    CHECK(boundary(2)->count_simplices(2) == delta_simplex_count_oracle(2, 2) - 1);
    CHECK(boundary(2)->count_simplices(2) == 9);
}

TEST_CASE("hom enumeration agrees with Yoneda") {
    Budget b = big_budget();
    for (int n = 1; n <= 3; ++n)
        CHECK(hom_enumerate(standard_simplex(0), standard_simplex(n), b).size() == size_t(n + 1));
    // |Hom(Delta^1, Y)| = |Y_1|
    for (const auto& y : {standard_simplex(1), standard_simplex(2), boundary(2), circle()})
        CHECK(hom_enumerate(standard_simplex(1), y, b).size() == size_t(y->count_simplices(1)));
    CHECK(hom_enumerate(standard_simplex(1), standard_simplex(1), b).size() == 3);
    CHECK(hom_enumerate(boundary(2), standard_simplex(0), b).size() == 1);
}

TEST_CASE("hom enumeration is deterministic and validates") {
    Budget b = big_budget();
    auto src = boundary(2);
    auto tgt = standard_simplex(2);
    auto maps1 = hom_enumerate(src, tgt, b);
    auto maps2 = hom_enumerate(src, tgt, b);
    REQUIRE(maps1.size() == maps2.size());
    for (size_t i = 0; i < maps1.size(); ++i) CHECK(maps1[i] == maps2[i]);
    for (const auto& m : maps1) m.validate();
}

TEST_CASE("disjoint union") {
    auto du = disjoint_union(standard_simplex(0), standard_simplex(0));
    CHECK(du.cx->cell_count(0) == 2);
    du.in_left.validate();
    du.in_right.validate();
}

TEST_CASE("pushout collapse of the interval boundary gives the circle") {
    auto bd1 = boundary(1);
    auto d1 = standard_simplex(1);
    auto pt = standard_simplex(0);
    SMap f = subcomplex_inclusion(bd1, d1);
    SMap g = SMap::constant_to_vertex(bd1, pt, 0);
    Pushout po = pushout(f, g);
    CHECK(po.cx->cell_count(0) == 1);
    CHECK(po.cx->cell_count(1) == 1);
    po.from_x.validate();
    po.from_y.validate();
    // structurally the corpus circle
    CHECK(po.cx->faces_of(1, 0)[0] == SSet::cell_ref(0, 0));
    CHECK(po.cx->faces_of(1, 0)[1] == SSet::cell_ref(0, 0));
}

TEST_CASE("pushout along identity legs returns the other object") {
    auto a = boundary(2);
    auto y = standard_simplex(2);
    SMap f = SMap::identity(a);
    SMap g = subcomplex_inclusion(a, y);
    Pushout po = pushout(f, g);
    for (int d = 0; d <= 2; ++d) CHECK(po.cx->cell_count(d) == y->cell_count(d));
    CHECK(po.from_y.is_mono());
}

TEST_CASE("pushout satisfies the universal property against enumerated cones") {
    auto bd1 = boundary(1);
    auto d1 = standard_simplex(1);
    auto pt = standard_simplex(0);
    SMap f = subcomplex_inclusion(bd1, d1);
    SMap g = SMap::constant_to_vertex(bd1, pt, 0);
    Pushout po = pushout(f, g);

    Budget b = big_budget();
    auto z = standard_simplex(1);
    auto us = hom_enumerate(d1, z, b);
    auto vs = hom_enumerate(pt, z, b);
    auto ws = hom_enumerate(po.cx, z, b);
    int cones = 0;
    for (const auto& u : us) {
        for (const auto& v : vs) {
            if (!(compose(u, f) == compose(v, g))) continue;
            ++cones;
            int mediators = 0;
            for (const auto& w : ws) {
                if (compose(w, po.from_x) == u && compose(w, po.from_y) == v) ++mediators;
            }
            CHECK(mediators == 1);
        }
    }
    CHECK(cones > 0);
}

TEST_CASE("nonmono glue is rejected") {
    auto bd1 = boundary(1);
    auto pt = standard_simplex(0);
    SMap g = SMap::constant_to_vertex(bd1, pt, 0);
    CHECK_THROWS_AS(pushout(g, g), NonInjectiveGlue);
}

TEST_CASE("product cell counts match the shuffle oracle") {
    auto d1 = standard_simplex(1);
    auto d2 = standard_simplex(2);
    auto s1 = circle();
    Product p11 = product(d1, d1, 2);
    CHECK(p11.cx->cell_count(0) == 4);
    CHECK(p11.cx->cell_count(1) == 5);
    CHECK(p11.cx->cell_count(2) == 2);
    p11.proj_x.validate();
    p11.proj_y.validate();

    Product p12 = product(d1, d2, 3);
    CHECK(p12.cx->cell_count(3) == 3);  // (1,2)-shuffles

    for (const auto& pr : {std::pair{d1, d1}, {d1, d2}, {s1, d1}, {s1, s1}}) {
        Product p = product(pr.first, pr.second, 4);
        for (int n = 0; n <= 4; ++n)
            CHECK(p.cx->cell_count(n) == product_cells_oracle(*pr.first, *pr.second, n));
    }
}

TEST_CASE("product with the point is the identity") {
    auto x = boundary(2);
    Product p = product(x, standard_simplex(0), 3);
    for (int d = 0; d <= 3; ++d) CHECK(p.cx->cell_count(d) == x->cell_count(d));
    CHECK(p.proj_x.is_mono());
}

TEST_CASE("product dimension budget") {
    CHECK_THROWS_AS(product(standard_simplex(1), standard_simplex(1), 40), DimBudgetExceeded);
}

TEST_CASE("representing map sends the top cell to the simplex") {
    auto x = boundary(2);
    for (const auto& r : x->all_simplices(2)) {
        SMap m = representing_map(x, r);
        m.validate();
        CHECK(m.on_cell(2, 0) == r);
    }
}

TEST_CASE("pullback of the diagonal square is the object itself") {
    auto x = standard_simplex(1);
    SMap id = SMap::identity(x);
    PullbackResult pb = pullback(id, id, 3);
    for (int d = 0; d <= 3; ++d) CHECK(pb.cx->cell_count(d) == x->cell_count(d));
    SMap cmp = pair_mediating_map(x, id, id, pb);
    cmp.validate();
    CHECK(cmp.is_mono());
}
