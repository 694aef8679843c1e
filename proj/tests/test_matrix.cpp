#include <catch2/catch_amalgamated.hpp>

#include "bgd/field.hpp"
#include "bgd/matrix.hpp"
#include "oracle.hpp"

using namespace bgd;

namespace {

RationalField Q;

Mat<RationalField> mat(int rows, int cols, std::initializer_list<long> vals) {
    Mat<RationalField> m(Q, rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Q.from_long(*it++);
    return m;
}

} // namespace

TEST_CASE("rational scalars are canonical") {
    auto a = Q.parse("3/6");
    auto b = Q.parse("1/2");
    REQUIRE(a == b);
    REQUIRE(Q.to_string(a) == "1/2");
    REQUIRE(Q.to_string(Q.parse("-4/2")) == "-2");
    REQUIRE_THROWS_AS(Q.parse("1/0"), FieldError);
}

TEST_CASE("prime field arithmetic") {
    PrimeField f5(5);
    REQUIRE(f5.to_string(f5.from_long(-1)) == "4");
    REQUIRE(f5.from_long(2) * f5.from_long(3) == f5.one());
    REQUIRE(f5.from_long(3) / f5.from_long(2) == f5.from_long(4));
    REQUIRE_THROWS_AS(PrimeField(6), FieldError);
    PrimeField f2(2);
    REQUIRE(f2.from_long(3) == f2.one());
}

TEST_CASE("solve: identity, underdetermined, inconsistent") {
    // f = id_2, target (3,5)
    auto id2 = Mat<RationalField>::identity(Q, 2);
    auto t = mat(2, 1, {3, 5});
    auto s = solve(id2, t);
    REQUIRE(s);
    REQUIRE(s->particular == t);
    REQUIRE(s->kernel.cols() == 0);

    // f = [[1,1]], target (2) -> x = (2,0), kernel span{(1,-1)}
    auto f = mat(1, 2, {1, 1});
    auto s2 = solve(f, mat(1, 1, {2}));
    REQUIRE(s2);
    REQUIRE(s2->particular == mat(2, 1, {2, 0}));
    REQUIRE(s2->kernel.cols() == 1);
    REQUIRE((f * s2->kernel).is_zero());
    REQUIRE(same_column_space(s2->kernel, mat(2, 1, {1, -1})));

    // zero 1x1, target (1) -> no solution
    auto z = Mat<RationalField>::zero(Q, 1, 1);
    REQUIRE(!solve(z, mat(1, 1, {1})));
}

TEST_CASE("kernel examples") {
    REQUIRE(kernel(Mat<RationalField>::identity(Q, 3)).cols() == 0);
    REQUIRE(kernel(Mat<RationalField>::zero(Q, 4, 4)).cols() == 4);
    auto k = kernel(mat(1, 2, {1, 1}));
    REQUIRE(k.cols() == 1);
    REQUIRE(same_column_space(k, mat(2, 1, {1, -1})));
}

TEST_CASE("cokernel examples") {
    auto c1 = cokernel(Mat<RationalField>::identity(Q, 2));
    REQUIRE(c1.dim == 0);

    auto c2 = cokernel(Mat<RationalField>::zero(Q, 3, 2));
    REQUIRE(c2.dim == 3);
    REQUIRE(c2.proj == Mat<RationalField>::identity(Q, 3));

    auto f = mat(2, 1, {1, 1});
    REQUIRE(oracle::rank(f) == 1);  // quotient dim = 2 - rank = 1
    auto c3 = cokernel(f);
    REQUIRE(c3.dim == 1);
    REQUIRE((c3.proj * f).is_zero());
    REQUIRE(c3.proj * c3.section == Mat<RationalField>::identity(Q, 1));
}

TEST_CASE("cokernel invariants on random maps over both fields") {
    std::mt19937 rng(20240811);
    for (int it = 0; it < 25; ++it) {
        auto f = oracle::random_mat(Q, 1 + it % 5, 1 + (it * 7) % 6, rng);
        auto ck = cokernel(f);
        REQUIRE((ck.proj * f).is_zero());
        REQUIRE(ck.proj * ck.section == Mat<RationalField>::identity(Q, ck.dim));
        REQUIRE(rank(ck.proj) == ck.dim);
        REQUIRE(ck.dim == f.rows() - oracle::rank(f));
        // rank-nullity
        REQUIRE(kernel(f).cols() + oracle::rank(f) == f.cols());
    }
    PrimeField f7(7);
    for (int it = 0; it < 25; ++it) {
        auto f = oracle::random_mat(f7, 1 + it % 5, 1 + (it * 5) % 6, rng, 0, 6);
        auto ck = cokernel(f);
        REQUIRE((ck.proj * f).is_zero());
        REQUIRE(ck.proj * ck.section == Mat<PrimeField>::identity(f7, ck.dim));
        REQUIRE(ck.dim == f.rows() - oracle::rank(f));
        REQUIRE(kernel(f).cols() + oracle::rank(f) == f.cols());
    }
}

TEST_CASE("kron examples and properties") {
    auto id2 = Mat<RationalField>::identity(Q, 2);
    auto id3 = Mat<RationalField>::identity(Q, 3);
    REQUIRE(kron(id2, id3) == Mat<RationalField>::identity(Q, 6));

    // defining property on a basis vector
    auto f = mat(2, 2, {1, 2, 3, 4});
    auto g = mat(2, 2, {0, 1, 1, 0});
    auto e01 = mat(4, 1, {0, 1, 0, 0});  // e_0 (x) e_1
    auto expect = kron(f.col(0), g.col(1));
    REQUIRE(kron(f, g) * e01 == expect);

    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        auto a = oracle::random_mat(Q, 2, 2, rng);
        auto b = oracle::random_mat(Q, 2, 2, rng);
        REQUIRE(oracle::rank(kron(a, b)) == oracle::rank(a) * oracle::rank(b));
        // functoriality
        auto a2 = oracle::random_mat(Q, 2, 2, rng);
        auto b2 = oracle::random_mat(Q, 2, 2, rng);
        REQUIRE(kron(a, b) * kron(a2, b2) == kron(a * a2, b * b2));
    }
}

TEST_CASE("swap examples and naturality") {
    REQUIRE(swap_map(Q, 1, 5) == Mat<RationalField>::identity(Q, 5));
    auto s22 = swap_map(Q, 2, 2);
    auto expect = mat(4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    REQUIRE(s22 == expect);
    REQUIRE(swap_map(Q, 3, 2) * swap_map(Q, 2, 3) == Mat<RationalField>::identity(Q, 6));

    std::mt19937 rng(99);
    for (int it = 0; it < 10; ++it) {
        auto f = oracle::random_mat(Q, 2, 2, rng);
        auto g = oracle::random_mat(Q, 2, 2, rng);
        REQUIRE(kron(g, f) * swap_map(Q, 2, 2) == swap_map(Q, 2, 2) * kron(f, g));
    }
}

TEST_CASE("tensor_perm basics") {
    // permuting (d0,d1,d2) -> (d2,d0,d1)
    std::vector<int> dims{2, 3, 2};
    std::vector<int> perm{2, 0, 1};
    auto p = tensor_perm(Q, dims, perm);
    // e_(i,j,k) -> e_(k,i,j)
    Mat<RationalField> v(Q, 12, 1);
    v.at((1 * 3 + 2) * 2 + 0, 0) = Q.one();  // (i,j,k) = (1,2,0)
    auto w = p * v;
    REQUIRE(w.at((0 * 2 + 1) * 3 + 2, 0) == Q.one());
}

TEST_CASE("sparse rref matches dense cokernel") {
    std::mt19937 rng(4242);
    for (int it = 0; it < 15; ++it) {
        auto f = oracle::random_mat(Q, 4, 6, rng);
        // span rows = columns of f
        SpMat<RationalField> rows(Q, f.cols(), f.rows());
        for (int j = 0; j < f.cols(); ++j)
            for (int i = 0; i < f.rows(); ++i)
                if (!RationalField::is_zero(f.at(i, j))) rows.row(j).push_back({i, f.at(i, j)});
        auto a = cokernel(f);
        auto b = cokernel_of_span(rows);
        REQUIRE(a.dim == b.dim);
        REQUIRE(a.proj == b.proj);
        REQUIRE(a.section == b.section);
    }
}

TEST_CASE("sparse matrix products agree with dense") {
    std::mt19937 rng(11);
    auto a = oracle::random_mat(Q, 5, 4, rng);
    auto b = oracle::random_mat(Q, 4, 6, rng);
    auto sa = SpMat<RationalField>::from_dense(a);
    auto sb = SpMat<RationalField>::from_dense(b);
    REQUIRE((sa * sb).to_dense() == a * b);
    REQUIRE(sa * b == a * b);
    REQUIRE(a * sb == a * b);
    REQUIRE(kron(sa, sb).to_dense() == kron(a, b));
}

TEST_CASE("inverse") {
    auto m = mat(2, 2, {2, 1, 1, 1});
    auto inv = inverse(m);
    REQUIRE(inv);
    REQUIRE(*inv * m == Mat<RationalField>::identity(Q, 2));
    REQUIRE(!inverse(mat(2, 2, {1, 1, 1, 1})));
}
