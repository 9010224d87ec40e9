#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <findim/linalg.hpp>
#include <findim/matrix.hpp>

#include "test_support.hpp"

using namespace findim;

TEST_CASE("rational string round trip") {
    CHECK(to_string(Rational(1) / 2) == "1/2");
    CHECK(to_string(Rational(-7)) == "-7");
    CHECK(rational_from_string("2/4") == Rational(1) / 2);
    CHECK(rational_from_string("-3/6") == Rational(-1) / 2);
    CHECK(rational_from_string("5") == Rational(5));
    CHECK(numerator(rational_from_string("4/-6")) == -2);
    CHECK(denominator(rational_from_string("4/-6")) == 3);
    CHECK_THROWS_AS(rational_from_string("1/0"), SchemaError);
    CHECK_THROWS_AS(rational_from_string("a/b"), SchemaError);
    CHECK_THROWS_AS(rational_from_string(""), SchemaError);
}

TEST_CASE("rref on worked examples") {
    RrefResult id2 = rref(Matrix::identity(2));
    CHECK(id2.reduced == Matrix::identity(2));
    CHECK(id2.pivots == std::vector<std::size_t>{0, 1});

    RrefResult dependent = rref(Matrix{{1, 2}, {2, 4}});
    CHECK(dependent.reduced == Matrix{{1, 2}, {0, 0}});
    CHECK(dependent.pivots == std::vector<std::size_t>{0});

    RrefResult zero = rref(Matrix(3, 3));
    CHECK(zero.reduced == Matrix(3, 3));
    CHECK(zero.pivots.empty());
}

TEST_CASE("image basis") {
    CHECK(image_basis(Matrix(3, 3)).cols() == 0);
    CHECK(image_basis(Matrix::identity(4)) == Matrix::identity(4));
    Matrix rank_one = image_basis(Matrix{{1, 1}, {0, 0}});
    REQUIRE(rank_one.cols() == 1);
    CHECK(rank_one(0, 0) == 1);
    CHECK(rank_one(1, 0) == 0);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(Matrix::identity(3)).cols() == 0);
    CHECK(kernel_basis(Matrix(2, 5)).cols() == 5);
    Matrix k = kernel_basis(Matrix{{1, 2}, {2, 4}});
    REQUIRE(k.cols() == 1);
    // proportional to (2, -1)
    CHECK(k(0, 0) * Rational(-1) == k(1, 0) * Rational(2));
    CHECK(!(k.column(0).is_zero()));
}

TEST_CASE("solve") {
    Matrix b{{3}, {5}};
    CHECK(solve(Matrix::identity(2), b) == b);
    CHECK(solve(Matrix{{2}}, Matrix{{1}}) == Matrix{{1}}.scaled(Rational(1) / 2));
    CHECK_THROWS_AS(solve(Matrix{{1}, {0}}, Matrix{{0}, {1}}), InconsistentError);
}

TEST_CASE("split_idempotent on worked examples") {
    SplitData id = split_idempotent(Matrix::identity(3));
    CHECK(id.inclusion == Matrix::identity(3));
    CHECK(id.projection == Matrix::identity(3));

    SplitData zero = split_idempotent(Matrix(2, 2));
    CHECK(zero.inclusion.cols() == 0);
    CHECK(zero.projection.rows() == 0);

    Matrix p{{1, 1}, {0, 0}};
    SplitData s = split_idempotent(p);
    REQUIRE(s.inclusion.cols() == 1);
    CHECK(s.inclusion == Matrix{{1}, {0}});
    CHECK(s.projection == Matrix{{1, 1}});
    CHECK(s.projection * s.inclusion == Matrix::identity(1));
    CHECK(s.inclusion * s.projection == p);

    CHECK_THROWS_AS(split_idempotent(Matrix{{1, 1}, {1, 1}}), NotIdempotent);
    CHECK_THROWS_AS(split_idempotent(Matrix(2, 3)), NotIdempotent);
}

TEST_CASE("rank and kernel dimensions on random matrices") {
    std::mt19937 rng(1101);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + trial % 5, cols = 1 + (trial * 7) % 5;
        Matrix m = testsupport::random_matrix(rng, rows, cols);
        std::size_t r = rank(m);
        CHECK(r == rank(m.transpose()));
        CHECK(kernel_basis(m).cols() + r == cols);
        CHECK((m * kernel_basis(m)).is_zero());
    }
}

TEST_CASE("solve round-trips on consistent systems") {
    std::mt19937 rng(1102);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t rows = 1 + trial % 4, cols = 1 + (trial * 5) % 4;
        Matrix m = testsupport::random_matrix(rng, rows, cols);
        Matrix w = testsupport::random_matrix(rng, cols, 1);
        Matrix b = m * w;
        CHECK(m * solve(m, b) == b);
    }
}

TEST_CASE("split composites hold exactly on random idempotents") {
    std::mt19937 rng(1103);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + trial % 4;
        std::size_t r = 1 + trial % n;
        // B (C B)^{-1} C is idempotent whenever C B is invertible.
        Matrix b(0, 0), c(0, 0), cb(0, 0);
        do {
            b = testsupport::random_matrix(rng, n, r, -2, 2);
            c = testsupport::random_matrix(rng, r, n, -2, 2);
            cb = c * b;
        } while (rank(cb) < r);
        Matrix p = b * (inverse(cb) * c);
        REQUIRE(p * p == p);
        SplitData s = split_idempotent(p);
        CHECK(s.projection * s.inclusion == Matrix::identity(s.inclusion.cols()));
        CHECK(s.inclusion * s.projection == p);
    }
}

TEST_CASE("inverse") {
    std::mt19937 rng(1104);
    Matrix u = testsupport::random_invertible(rng, 4);
    CHECK(u * inverse(u) == Matrix::identity(4));
    CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), NotInvertible);
    CHECK_THROWS_AS(inverse(Matrix(2, 3)), NotInvertible);
}
