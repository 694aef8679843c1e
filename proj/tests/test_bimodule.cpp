#include <catch2/catch_amalgamated.hpp>

#include "bgd/bimodule.hpp"
#include "builders.hpp"
#include "oracle.hpp"

using namespace bgd;
using namespace builders;

namespace {

RationalField Q;

// The two R-R-bimodule structures carried by the total algebra of the
// enveloping datum: R = Q x Q, A = R (x) R^op, s(r) = r (x) 1, t(r) = 1 (x) r.
struct Env2 {
    Algebra<RationalField> r, a;
    Mat<RationalField> s, t;
    Bimodule<RationalField> l;  // r.x = s(r)x, x.r = t(r)x

    Env2() : r(square_field(Q)), a(enveloping(r)), s(Q, 4, 2), t(Q, 4, 2) {
        auto id2 = Mat<RationalField>::identity(Q, 2);
        s = kron(id2, r.unit);
        t = kron(r.unit, id2);
        auto id4 = Mat<RationalField>::identity(Q, 4);
        auto lact = a.mul * kron(s, id4);
        auto ract = a.mul * swap_map(Q, 4, 4) * kron(id4, t);
        l = Bimodule<RationalField>{r, r, 4, lact, ract};
    }
};

} // namespace

TEST_CASE("regular bimodule and base-field bimodules validate") {
    auto c2 = group_c2(Q);
    REQUIRE(validate_bimodule(regular_bimodule(c2)).pass());
    REQUIRE(validate_bimodule(plain_space(Q, 3)).pass());
    Env2 e;
    REQUIRE(validate_bimodule(e.l).pass());
}

TEST_CASE("swapped actions break the commuting-actions law") {
    Env2 e;
    Bimodule<RationalField> bad = e.l;
    std::swap(bad.lact, bad.ract);
    auto rep = validate_bimodule(bad);
    REQUIRE(!rep.pass());
}

TEST_CASE("module tensor product over the base field is the full tensor") {
    auto m = leaf(plain_space(Q, 2));
    auto q = qtensor(m, m);
    REQUIRE(q->dim() == 4);
    REQUIRE(q->proj == Mat<RationalField>::identity(Q, 4));
}

TEST_CASE("R tensor R over R is R via the unit law") {
    for (const auto& alg : {group_c2(Q), square_field(Q), idem_monoid(Q)}) {
        auto r = leaf(regular_bimodule(alg));
        auto q = qtensor(r, r);
        REQUIRE(q->dim() == alg.dim);
        auto elim = unit_elim_left(q, r);
        auto intro = unit_intro_left(r, q);
        REQUIRE(elim.m * intro.m == Mat<RationalField>::identity(Q, alg.dim));
        REQUIRE(intro.m * elim.m == Mat<RationalField>::identity(Q, q->dim()));
        // composed with the projection, elimination is the multiplication
        REQUIRE(elim.m * q->proj == alg.mul);
    }
}

TEST_CASE("ENV2 quotient dimension is 8, cross-checked") {
    Env2 e;
    auto l = leaf(e.l);
    auto q = qtensor(l, l);
    REQUIRE(q->dim() == 8);
    // oracle: dim = 16 - rank of the balancing map
    Mat<RationalField> bal(Q, 16, 4 * 2 * 4);
    auto id4 = Mat<RationalField>::identity(Q, 4);
    auto lhs = kron(e.l.ract, id4);
    auto rhs = kron(id4, e.l.lact);
    bal = lhs - rhs;
    REQUIRE(q->dim() == 16 - oracle::rank(bal));
    REQUIRE(q->proj * q->sec == Mat<RationalField>::identity(Q, 8));
    // defining coequalizer relation
    REQUIRE(q->proj * lhs == q->proj * rhs);
    REQUIRE(validate_bimodule(q->mod).pass());
}

TEST_CASE("descend: projection descends to the identity, unbalanced maps are rejected") {
    Env2 e;
    auto l = leaf(e.l);
    auto q = qtensor(l, l);
    auto d = descend(q, q->proj);
    REQUIRE(d.ok());
    REQUIRE(d.m == Mat<RationalField>::identity(Q, q->dim()));
    auto bad = descend(q, Mat<RationalField>::identity(Q, 16));
    REQUIRE(!bad.ok());

    // over the base field the quotient is trivial and everything descends
    auto c2 = group_c2(Q);
    auto a2 = leaf(plain_space(Q, 2));
    auto qk = qtensor(a2, a2);
    auto mu = descend(qk, c2.mul);
    REQUIRE(mu.ok());
    REQUIRE(mu.m == c2.mul);
}

TEST_CASE("induced maps: identity, multiplication endomorphisms, functoriality") {
    Env2 e;
    auto l = leaf(e.l);
    auto q = qtensor(l, l);
    auto idm = qidentity(l);
    auto ind = qmap_tensor(idm, idm, q, q);
    REQUIRE(ind.map);
    REQUIRE(ind.map->m == Mat<RationalField>::identity(Q, q->dim()));

    // left multiplications by algebra elements are bimodule endomorphisms
    // here (A is commutative), and induction is functorial in them.
    auto lmul = [&](int basis) {
        Mat<RationalField> c(Q, 4, 1);
        c.at(basis, 0) = Q.one();
        return QMap<RationalField>{l, l, e.a.mul * kron(c, Mat<RationalField>::identity(Q, 4))};
    };
    auto f1 = lmul(1), f2 = lmul(2), g1 = lmul(3), g2 = lmul(0);
    auto i1 = qmap_tensor(f1, g1, q, q);
    auto i2 = qmap_tensor(f2, g2, q, q);
    REQUIRE(i1.map);
    REQUIRE(i2.map);
    auto comp = qmap_tensor(compose(f1, f2), compose(g1, g2), q, q);
    REQUIRE(comp.map);
    REQUIRE(comp.map->m == i1.map->m * i2.map->m);
}

TEST_CASE("reassociator between bracketings is a verified isomorphism") {
    Env2 e;
    auto l = leaf(e.l);
    auto ll = qtensor(l, l);
    auto left = qtensor(ll, l);   // (L (x) L) (x) L
    auto lr = qtensor(l, ll);     // L (x) (L (x) L)
    REQUIRE(left->dim() == lr->dim());
    auto a = reassoc(left, lr);
    auto b = reassoc(lr, left);
    REQUIRE(a.m * b.m == Mat<RationalField>::identity(Q, lr->dim()));
    REQUIRE(b.m * a.m == Mat<RationalField>::identity(Q, left->dim()));

    auto c2 = group_c2(Q);
    auto r = leaf(regular_bimodule(c2));
    auto rr = qtensor(r, r);
    auto t1 = qtensor(rr, r);
    auto t2 = qtensor(r, rr);
    auto ra = reassoc(t1, t2);
    REQUIRE(rank(ra.m) == t1->dim());
}

TEST_CASE("unit isomorphisms for catalog modules") {
    Env2 e;
    auto l = leaf(e.l);
    auto r = leaf(regular_bimodule(e.r));
    auto rl = qtensor(r, l);
    auto intro = unit_intro_left(l, rl);
    auto elim = unit_elim_left(rl, l);
    REQUIRE(elim.m * intro.m == Mat<RationalField>::identity(Q, 4));
    REQUIRE(intro.m * elim.m == Mat<RationalField>::identity(Q, rl->dim()));
    auto lr = qtensor(l, r);
    auto intro2 = unit_intro_right(l, lr);
    auto elim2 = unit_elim_right(lr, l);
    REQUIRE(elim2.m * intro2.m == Mat<RationalField>::identity(Q, 4));
    REQUIRE(intro2.m * elim2.m == Mat<RationalField>::identity(Q, lr->dim()));
}

TEST_CASE("equalizer examples") {
    auto f = Mat<RationalField>::identity(Q, 3);
    auto e1 = equalizer_sub(f, f);
    REQUIRE(e1.dim == 3);
    auto e2 = equalizer_sub(f, Mat<RationalField>::zero(Q, 3, 3));
    REQUIRE(e2.dim == 0);
}

TEST_CASE("box bimodule carries interleaved actions") {
    Env2 e;
    auto bx = box_bimodule(e.l, regular_bimodule(e.a));
    REQUIRE(validate_bimodule(bx).pass());
    REQUIRE(bx.dim == 16);
    REQUIRE(bx.lbase.dim == 8);
    REQUIRE(bx.rbase.dim == 8);
}
