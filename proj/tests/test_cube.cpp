#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <findim/cube.hpp>
#include <findim/powers.hpp>

#include "test_support.hpp"

using namespace findim;

namespace {

// X = Q included into Y = Q^2 in degree 0.
ChainMap line_in_plane() {
    static Complex x = Complex::unit();
    static Complex y = Complex::point(0, 2);
    return ChainMap(x, y, {{0, Matrix{{1}, {0}}}});
}

} // namespace

TEST_CASE("cube_object boundary cases") {
    ChainMap f = line_in_plane();
    CubeObject full = cube_object(f, 2, 0);
    CHECK(full.subcomplex.basis.at(0).cols() == 4); // all of Y (x) Y

    CubeObject deepest = cube_object(f, 2, 2);
    REQUIRE(deepest.subcomplex.basis.at(0).cols() == 1);
    // the basis vector is f (x) f applied to the generator of X (x) X
    Matrix column = deepest.subcomplex.basis.at(0);
    CHECK(column(0, 0) == 1);
    CHECK(column(1, 0) == 0);
    CHECK(column(2, 0) == 0);
    CHECK(column(3, 0) == 0);

    CHECK(cube_object(f, 2, 1).subcomplex.basis.at(0).cols() == 3);
    CHECK_THROWS_AS(cube_object(f, 2, 3), RangeError);

    Complex plane = Complex::point(0, 2);
    ChainMap collapse(plane, Complex::unit(), {{0, Matrix{{1, 1}}}});
    CHECK_THROWS_AS(cube_object(collapse, 2, 1), NotInjective);
}

TEST_CASE("cube objects are stable under the group action") {
    std::mt19937 rng(71);
    for (int t = 0; t < 5; ++t) {
        Complex x = testsupport::random_complex(rng, 0, 1, 2);
        Complex z = testsupport::random_complex(rng, 0, 1, 2);
        ChainMap f = testsupport::random_extension(rng, x, z);
        int m = 2 + t % 2;
        PowerContext ambient(f.target(), m);
        for (int i = 0; i <= m; ++i) {
            CubeObject cube = cube_object(f, m, i);
            for (const Permutation& sigma : enumerate_group(m)) {
                ChainMap graph = gamma_action(sigma, ambient);
                for (const auto& [n, basis] : cube.subcomplex.basis) {
                    // the permuted basis still lies in the span
                    CHECK_NOTHROW(solve(basis, graph.block(n) * basis));
                }
            }
        }
    }
}

TEST_CASE("cube dimensions are weakly decreasing in i") {
    std::mt19937 rng(72);
    for (int t = 0; t < 5; ++t) {
        Complex x = testsupport::random_complex(rng, 0, 1, 2);
        Complex z = testsupport::random_complex(rng, 0, 1, 2);
        ChainMap f = testsupport::random_extension(rng, x, z);
        int m = 2 + t % 2;
        CubeContext ctx(f, m);
        for (int i = 1; i <= m; ++i) {
            auto outer = ctx.cube_dims(i - 1);
            for (const auto& [n, d] : ctx.cube_dims(i)) CHECK(d <= outer[n]);
        }
    }
}

TEST_CASE("cube_quotient_check on the m = 2 example") {
    ChainMap f = line_in_plane();
    CubeQuotientVerdict level1 = cube_quotient_check(f, 2, 1);
    CHECK(level1.pass());
    CHECK(level1.quotient_dims == std::map<int, int>{{0, 1}}); // dim Z (x) Z = 1

    CubeQuotientVerdict level2 = cube_quotient_check(f, 2, 2);
    CHECK(level2.pass());
    CHECK(level2.quotient_dims == std::map<int, int>{{0, 2}}); // Z (x) X + X (x) Z

    CubeQuotientVerdict edge = cube_quotient_check(f, 2, 0);
    CHECK(edge.pass());
    CHECK(edge.quotient_dims.empty());
}

TEST_CASE("cube_quotient_check on random short exact sequences") {
    std::mt19937 rng(73);
    for (int t = 0; t < 8; ++t) {
        Complex x = testsupport::random_complex(rng, 0, 2, 2);
        Complex z = testsupport::random_complex(rng, 0, 2, 2);
        ChainMap f = testsupport::random_extension(rng, x, z);
        if (f.target().total_dim() > 4) continue;
        int m = 2 + t % 3;
        for (int i = 0; i <= m; ++i) CHECK(cube_quotient_check(f, m, i).pass());
    }
}

TEST_CASE("mixed idempotent images at the boundary levels") {
    ChainMap f = line_in_plane();
    // i = 0 reproduces the pure powers of Y
    for (int m = 2; m <= 3; ++m) {
        MixedIdempotentImage wedge = mixed_idempotent_image(f, m, 0, Sign::plus);
        CHECK(wedge.image.dims() == wedge_power(f.target(), m).dims());
        MixedIdempotentImage sym = mixed_idempotent_image(f, m, 0, Sign::minus);
        CHECK(sym.image.dims() == sym_power(f.target(), m).dims());
    }
    // i = m reproduces the pure powers of X transported along f
    for (int m = 2; m <= 3; ++m) {
        MixedIdempotentImage wedge = mixed_idempotent_image(f, m, m, Sign::plus);
        CHECK(wedge.image.dims() == wedge_power(f.source(), m).dims());
        MixedIdempotentImage sym = mixed_idempotent_image(f, m, m, Sign::minus);
        CHECK(sym.image.dims() == sym_power(f.source(), m).dims());
    }
}

TEST_CASE("mixed idempotent image at m = 2, i = 1") {
    ChainMap f = line_in_plane();
    // Antisymmetrizer restricted to the 3-dimensional cube has rank 1
    // (wedge square of the plane already lives inside the cube), the
    // symmetrizer restriction has rank 2.
    MixedIdempotentImage wedge = mixed_idempotent_image(f, 2, 1, Sign::plus);
    CHECK(wedge.image.dims() == std::map<int, int>{{0, 1}});
    MixedIdempotentImage sym = mixed_idempotent_image(f, 2, 1, Sign::minus);
    CHECK(sym.image.dims() == std::map<int, int>{{0, 2}});

    // splitting composites through the cube object
    CHECK(wedge.cube.dims() == std::map<int, int>{{0, 3}});
    CHECK(wedge.projection.compose(wedge.inclusion) == ChainMap::identity(wedge.image));
    ChainMap composite = wedge.inclusion.compose(wedge.projection);
    CHECK(composite.compose(composite) == composite);
    CHECK(wedge.ambient_inclusion == wedge.cube_inclusion.compose(wedge.inclusion));
    CHECK(wedge.ambient_inclusion.is_injective());
}

TEST_CASE("mixed idempotent splittings are exact on random input") {
    std::mt19937 rng(74);
    for (int t = 0; t < 5; ++t) {
        Complex x = testsupport::random_complex(rng, 0, 2, 2);
        Complex z = testsupport::random_complex(rng, 0, 2, 2);
        ChainMap f = testsupport::random_extension(rng, x, z);
        int m = 2 + t % 2;
        for (int i = 0; i <= m; ++i) {
            for (Sign sign : {Sign::plus, Sign::minus}) {
                MixedIdempotentImage data = mixed_idempotent_image(f, m, i, sign);
                CHECK(data.projection.compose(data.inclusion) == ChainMap::identity(data.image));
                ChainMap p = data.inclusion.compose(data.projection);
                CHECK(p.compose(p) == p);
            }
        }
    }
}
