#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "qmix/algebra.hpp"
#include "test_support.hpp"

using namespace qmix;
using Catch::Matchers::WithinAbs;

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("make_ket normalizes and validates") {
    const auto k = make_ket({{1, 0}, {0, 0}});
    CHECK(k.dim() == 2);
    CHECK_THAT(std::abs(k[0]), WithinAbs(1.0, tol::norm));
    CHECK_THAT(std::abs(k[1]), WithinAbs(0.0, tol::norm));

    const auto kx = make_ket({{1, 0}, {1, 0}});
    CHECK_THAT(kx[0].real(), WithinAbs(inv_sqrt2, 1e-15));
    CHECK_THAT(kx[1].real(), WithinAbs(inv_sqrt2, 1e-15));
    CHECK(same_state(kx, plus_x()));

    CHECK_THROWS_AS(make_ket({{0, 0}, {0, 0}}), zero_vector);
    CHECK_THROWS_AS(make_ket({}), empty_input);
}

TEST_CASE("expectation values on spin-1/2 fixtures") {
    CHECK_THAT(expectation(plus_x(), spin_x()), WithinAbs(0.5, 1e-15));
    CHECK_THAT(expectation(plus_y(), spin_x()), WithinAbs(0.0, 1e-15));
    CHECK_THAT(expectation(plus_z(), spin_z()), WithinAbs(0.5, 1e-15));
    CHECK_THAT(expectation(minus_y(), spin_x()), WithinAbs(0.0, 1e-15));

    const auto k3 = make_ket({{1, 0}, {0, 0}, {0, 0}});
    CHECK_THROWS_AS(expectation(k3, spin_x()), dimension_mismatch);
}

TEST_CASE("expectation is phase invariant") {
    splitmix64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto k = testgen::random_ket(rng, 3);
        const auto o = testgen::random_observable(rng, 3);
        const double phi = testgen::uniform(rng, 0, 2 * std::numbers::pi);
        std::vector<std::complex<double>> rotated(k.amplitudes());
        for (auto& a : rotated) a *= std::exp(std::complex<double>(0, phi));
        const auto kp = make_ket(std::move(rotated));
        CHECK_THAT(expectation(kp, o), WithinAbs(expectation(k, o), tol::eig));
    }
}

TEST_CASE("spin_component matrices and labels") {
    const auto sx = spin_x();
    CHECK(sx.label() == "s_x");
    CHECK_THAT(sx.matrix()(0, 1).real(), WithinAbs(0.5, 0.0));
    CHECK_THAT(sx.matrix()(0, 0).real(), WithinAbs(0.0, 0.0));

    const auto sz = spin_z();
    CHECK(sz.label() == "s_z");
    CHECK_THAT(sz.matrix()(0, 0).real(), WithinAbs(0.5, 0.0));
    CHECK_THAT(sz.matrix()(1, 1).real(), WithinAbs(-0.5, 0.0));

    CHECK_THROWS_AS(spin_direction(0, 2, 0), not_unit_vector);
}

TEST_CASE("spin components have eigenvalues -1/2, +1/2 in every direction") {
    splitmix64 rng(12);
    for (int i = 0; i < 64; ++i) {
        const auto d = testgen::random_direction(rng);
        const auto eig = herm_eig(spin_component(d));
        REQUIRE(eig.values.size() == 2);
        CHECK_THAT(eig.values[0], WithinAbs(-0.5, tol::eig));
        CHECK_THAT(eig.values[1], WithinAbs(0.5, tol::eig));
    }
}

TEST_CASE("spin expectation values stay within [-1/2, 1/2]") {
    splitmix64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const auto d = testgen::random_direction(rng);
        const auto k = testgen::random_ket(rng, 2);
        const double v = expectation(k, spin_component(d));
        CHECK(v >= -0.5 - tol::eig);
        CHECK(v <= 0.5 + tol::eig);
    }
}

TEST_CASE("herm_eig on the spin fixtures") {
    const auto ez = herm_eig(spin_z());
    CHECK_THAT(ez.values[0], WithinAbs(-0.5, 0.0));
    CHECK_THAT(ez.values[1], WithinAbs(0.5, 0.0));
    CHECK(same_state(ez.vector(0), minus_z()));
    CHECK(same_state(ez.vector(1), plus_z()));

    const auto ex = herm_eig(spin_x());
    CHECK_THAT(ex.values[0], WithinAbs(-0.5, tol::eig));
    CHECK_THAT(ex.values[1], WithinAbs(0.5, tol::eig));
    CHECK(same_state(ex.vector(0), minus_x()));
    CHECK(same_state(ex.vector(1), plus_x()));

    // degenerate spectrum: any orthonormal pair is acceptable
    const auto half = cmatrix::identity(2) * std::complex<double>(0.5);
    const auto ei = hermitian_eigen(half);
    CHECK_THAT(ei.values[0], WithinAbs(0.5, tol::eig));
    CHECK_THAT(ei.values[1], WithinAbs(0.5, tol::eig));
    CHECK_THAT(std::abs(inner_product(ei.vector(0), ei.vector(1))), WithinAbs(0.0, tol::eig));

    cmatrix skew(2, 2);
    skew(0, 1) = {1, 0};
    CHECK_THROWS_AS(hermitian_eigen(skew), not_hermitian);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
    splitmix64 rng(14);
    for (std::size_t dim = 2; dim <= 6; ++dim) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto o = testgen::random_observable(rng, dim);
            const auto eig = herm_eig(o);
            for (std::size_t i = 1; i < dim; ++i) CHECK(eig.values[i - 1] <= eig.values[i]);

            cmatrix rebuilt(dim, dim);
            for (std::size_t k = 0; k < dim; ++k) {
                const auto v = eig.vector(k);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j)
                        rebuilt(i, j) += eig.values[k] * v[i] * std::conj(v[j]);
            }
            CHECK(max_abs_diff(rebuilt, o.matrix()) <= tol::eig);

            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = 0; b < dim; ++b) {
                    const auto ip = inner_product(eig.vector(a), eig.vector(b));
                    CHECK_THAT(std::abs(ip), WithinAbs(a == b ? 1.0 : 0.0, tol::eig));
                }
        }
    }
}

TEST_CASE("evolve_pure fixtures") {
    splitmix64 seed_rng(15);
    const auto k = testgen::random_ket(seed_rng, 2);

    SECTION("t = 0 is the identity") {
        CHECK(same_state(evolve_pure(k, spin_z(), 0.0), k));
    }
    SECTION("eigenstates only pick up phase") {
        CHECK(same_state(evolve_pure(plus_z(), spin_z(), 1.7), plus_z()));
    }
    SECTION("z rotation carries |+x> to |+y>") {
        // U = diag(exp(-it/2), exp(+it/2)) applied to (1,1)/sqrt(2)
        const auto out = evolve_pure(plus_x(), spin_z(), std::numbers::pi / 2);
        CHECK(same_state(out, plus_y()));
    }
    SECTION("evolution preserves the norm") {
        splitmix64 rng(16);
        for (int i = 0; i < 30; ++i) {
            const auto psi = testgen::random_ket(rng, 4);
            const auto h = testgen::random_observable(rng, 4);
            const auto evolved = evolve_pure(psi, h, testgen::uniform(rng, -4, 4));
            double n = 0;
            for (std::size_t j = 0; j < evolved.dim(); ++j) n += std::norm(evolved[j]);
            CHECK_THAT(n, WithinAbs(1.0, tol::norm));
        }
    }
}

TEST_CASE("tensor products") {
    const auto zz = tensor(plus_z(), plus_z());
    REQUIRE(zz.dim() == 4);
    CHECK_THAT(std::abs(zz[0]), WithinAbs(1.0, tol::norm));

    // product expectation factorizes
    splitmix64 rng(17);
    for (int i = 0; i < 40; ++i) {
        const auto a = testgen::random_ket(rng, 2);
        const auto b = testgen::random_ket(rng, 2);
        const auto oa = testgen::random_observable(rng, 2);
        const auto ob = testgen::random_observable(rng, 2);
        const double lhs = expectation(tensor(a, b), tensor_obs(oa, ob));
        const double rhs = expectation(a, oa) * expectation(b, ob);
        CHECK_THAT(lhs, WithinAbs(rhs, tol::eig));
    }

    // s_z (x) I on |+z>|-z> sits in the +1/2 branch of subsystem 1
    const auto szi = tensor_obs(spin_z(), observable(cmatrix::identity(2), "I"));
    CHECK_THAT(expectation(tensor(plus_z(), minus_z()), szi), WithinAbs(0.5, 1e-15));
}
