#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "revstruct/densities.hpp"

using namespace revstruct;
using densities::ClassicalDensityGrid;
using densities::Complex;
using densities::DensityMatrix;
using densities::GridSpec;
using exact::Rational;

namespace {
GridSpec small_grid(int n, double h) { return GridSpec{n, h, 0.0}; }

ClassicalDensityGrid gaussian_density(const GridSpec& q, const GridSpec& p, double cq = 0.0,
                                      double cp = 0.0, double w = 1.0) {
    Eigen::MatrixXd v(q.count, p.count);
    for (int i = 0; i < q.count; ++i)
        for (int j = 0; j < p.count; ++j) {
            double dq = (q.coord(i) - cq) / w, dp = (p.coord(j) - cp) / w;
            v(i, j) = std::exp(-(dq * dq + dp * dp));
        }
    v /= v.sum() * q.spacing * p.spacing;
    return ClassicalDensityGrid::density(q, p, std::move(v));
}
}  // namespace

TEST_CASE("grids mirror bitwise") {
    for (GridSpec g : {small_grid(8, 0.25), small_grid(9, 0.5), densities::default_x_grid()}) {
        for (int i = 0; i < g.count; ++i) CHECK(g.coord(g.mirror(i)) == -g.coord(i));
        CHECK(g.symmetric());
    }
    GridSpec off{8, 0.25, 0.1};
    CHECK_FALSE(off.symmetric());
}

TEST_CASE("classical reversal is an index relabeling") {
    auto q = small_grid(8, 0.5), p = small_grid(8, 0.5);
    // concentrated at one lattice point (0-ish, p0)
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(8, 8);
    v(4, 6) = 1.0 / (0.5 * 0.5);
    auto rho = ClassicalDensityGrid::density(q, p, v);
    auto flipped = densities::induced_reversal_classical(rho);
    CHECK(flipped.value(4, 1) == v(4, 6));
    CHECK(flipped.value(4, 6) == 0.0);
    auto twice = densities::induced_reversal_classical(flipped);
    CHECK(core::distance(twice, rho) == 0.0);

    auto even = gaussian_density(q, p);
    CHECK(core::distance(densities::induced_reversal_classical(even), even) == 0.0);

    GridSpec bad{8, 0.5, 0.3};
    auto rho_bad = ClassicalDensityGrid::signed_grid(q, bad, Eigen::MatrixXd::Zero(8, 8));
    CHECK_THROWS_WITH_AS(densities::induced_reversal_classical(rho_bad),
                         doctest::Contains("asymmetric"), std::invalid_argument);
}

TEST_CASE("density validation") {
    auto q = small_grid(4, 1.0), p = small_grid(4, 1.0);
    Eigen::MatrixXd v = Eigen::MatrixXd::Constant(4, 4, 1.0);
    CHECK_THROWS_AS(ClassicalDensityGrid::density(q, p, v), std::invalid_argument);
    v /= 16.0;
    CHECK_NOTHROW(ClassicalDensityGrid::density(q, p, v));
    v(0, 0) = -v(0, 0);
    CHECK_THROWS_AS(ClassicalDensityGrid::density(q, p, v), std::invalid_argument);
    CHECK_NOTHROW(ClassicalDensityGrid::signed_grid(q, p, v));
}

TEST_CASE("even/odd split obeys the projector algebra") {
    auto q = small_grid(16, 0.5), p = small_grid(16, 0.5);
    core::Rng rng(404);
    auto rho = densities::seeded_classical_density(q, p, rng);
    auto [even, odd] = densities::even_odd_split(rho);
    CHECK((even.values() + odd.values() - rho.values()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(core::distance(densities::induced_reversal_classical(even), even) == 0.0);
    auto odd_flip = densities::induced_reversal_classical(odd);
    CHECK((odd_flip.values() + odd.values()).cwiseAbs().maxCoeff() == 0.0);
    auto [even2, odd2] = densities::even_odd_split(even);
    CHECK(core::distance(even2, even) == 0.0);
    CHECK(odd2.values().cwiseAbs().maxCoeff() == 0.0);

    // p-even density splits to (rho, 0); a pure p-odd grid splits to (0, it)
    auto sym = gaussian_density(q, p);
    auto [se, so] = densities::even_odd_split(sym);
    CHECK(core::distance(se, sym) == 0.0);
    CHECK(so.values().cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd ov(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            double pv = p.coord(j);
            ov(i, j) = pv * std::exp(-q.coord(i) * q.coord(i) - pv * pv);
        }
    auto odd_in = ClassicalDensityGrid::signed_grid(q, p, ov);
    auto [oe, oo] = densities::even_odd_split(odd_in);
    CHECK(oe.values().cwiseAbs().maxCoeff() == 0.0);
    CHECK(core::distance(oo, odd_in) == 0.0);
}

TEST_CASE("induced dynamics: identity, reversal law, mass") {
    // pullback checks use a denser lattice; bilinear mass drift shrinks ~h^2
    auto q = small_grid(96, 0.125);
    auto p = small_grid(96, 0.125);
    auto rho = gaussian_density(q, p, 0.2, -0.3, 1.0);
    symplectic::HamiltonianFlow ho(symplectic::FlowKind::harmonic_oscillator);
    symplectic::HamiltonianFlow free(symplectic::FlowKind::free_particle);

    auto still = densities::induced_dynamics_classical(rho, ho, 0.0);
    CHECK(core::distance(still, rho) == 0.0);

    for (double t : {0.15, 0.6}) {
        auto lhs = densities::induced_reversal_classical(densities::induced_dynamics_classical(
            densities::induced_reversal_classical(rho), free, t));
        auto rhs = densities::induced_dynamics_classical(rho, free, -t);
        CHECK(core::distance(lhs, rhs) <= 1e-6);
    }

    auto rotated = densities::induced_dynamics_classical(rho, ho, 0.4);
    CHECK(std::fabs(rotated.total_mass() - rho.total_mass()) <= 1e-6);
    auto full_turn = densities::induced_dynamics_classical(rho, ho, 2.0 * std::numbers::pi);
    CHECK(core::distance(full_turn, rho) <= 1e-6);
}

TEST_CASE("free-particle pullback matches the closed-form shear") {
    auto q = small_grid(96, 0.125), p = small_grid(96, 0.125);
    auto rho = gaussian_density(q, p, 0.0, 0.0, 1.0);
    symplectic::HamiltonianFlow free(symplectic::FlowKind::free_particle);
    const double t = 0.3;
    auto moved = densities::induced_dynamics_classical(rho, free, t);
    // (U_t rho)(q, p) = rho(q - t p, p); compare against the analytic
    // sheared Gaussian up to bilinear interpolation error O(h^2)
    const double norm = rho.values()(48, 48) /
                        std::exp(-q.coord(48) * q.coord(48) - p.coord(48) * p.coord(48));
    double worst = 0.0;
    for (int i = 0; i < q.count; ++i)
        for (int j = 0; j < p.count; ++j) {
            double qs = q.coord(i) - t * p.coord(j), ps = p.coord(j);
            double expected = norm * std::exp(-qs * qs - ps * ps);
            worst = std::max(worst, std::fabs(moved.value(i, j) - expected));
        }
    CHECK(worst <= 5e-3 * rho.values().maxCoeff());
}

TEST_CASE("support escape") {
    auto q = small_grid(32, 0.25), p = small_grid(32, 0.25);
    // density hugging the q boundary
    auto edge = gaussian_density(q, p, q.coord(q.count - 1), 0.0, 0.5);
    symplectic::HamiltonianFlow free(symplectic::FlowKind::free_particle);
    CHECK_THROWS_WITH_AS(densities::induced_dynamics_classical(edge, free, 1.0),
                         doctest::Contains("support escape"), std::runtime_error);
    // extreme shear drags mass off any finite grid
    auto centered = gaussian_density(q, p, 0.0, 0.0, 0.6);
    CHECK_THROWS_WITH_AS(densities::induced_dynamics_classical(centered, free, 100.0),
                         doctest::Contains("support escape"), std::runtime_error);
}

TEST_CASE("wavefunction reversal is conjugation") {
    auto x = densities::default_x_grid();
    auto real_psi = densities::gaussian_ground_state(x);
    auto conj_psi = densities::wavefunction_reversal(real_psi);
    CHECK((conj_psi.values() - real_psi.values()).cwiseAbs().maxCoeff() == 0.0);

    core::Rng rng(8);
    auto psi = densities::seeded_wavefunction(x, rng);
    auto rev = densities::wavefunction_reversal(psi);
    for (int i = 0; i < x.count; ++i) CHECK(rev.values()[i] == std::conj(psi.values()[i]));
    CHECK(rev.norm_squared() == psi.norm_squared());
    auto twice = densities::wavefunction_reversal(rev);
    CHECK((twice.values() - psi.values()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conjugation space translations reverse exactly") {
    densities::ConjugationSpace space(1);
    auto x1 = space.zero();
    x1.real_part[0] = Rational(1);
    auto jx1 = space.zero();
    jx1.imag_part[0] = Rational(1);
    // K S_1 K X1 = X1 - JX1
    auto lhs = space.conjugation(space.translate(space.conjugation(x1), Rational(1), jx1));
    auto rhs = space.translate(x1, Rational(-1), jx1);
    CHECK(lhs == rhs);
    CHECK(lhs.imag_part[0] == Rational(-1));

    auto r = densities::conjugation_translation_check(
        3, [] {
            densities::ConjugationSpace s(3);
            auto a = s.zero();
            a.imag_part[1] = Rational(2, 7);
            return a;
        }(),
        1000, {Rational(0), Rational(1), Rational(-3, 2)}, 505);
    CHECK(r.max_violation == 0.0);

    auto bad = space.zero();
    bad.real_part[0] = Rational(1);
    CHECK_THROWS_WITH_AS(
        densities::conjugation_translation_check(1, bad, 10, {Rational(1)}, 1),
        doctest::Contains("not a non-real translation"), std::invalid_argument);
}

TEST_CASE("density matrix construction and validation") {
    auto x = small_grid(16, 0.5);
    core::Rng rng(12);
    auto rho = densities::seeded_density_matrix(x, rng);
    CHECK(std::fabs(rho.trace() - 1.0) <= 1e-9);
    CHECK(rho.eigenvalues().minCoeff() >= -1e-10);

    Eigen::MatrixXcd junk = Eigen::MatrixXcd::Random(16, 16);
    CHECK_THROWS_AS(DensityMatrix(x, junk), std::invalid_argument);

    // Hermitian, unit trace, but indefinite
    Eigen::MatrixXcd indef = Eigen::MatrixXcd::Zero(16, 16);
    indef(0, 0) = Complex(3.0 / x.spacing, 0.0);
    indef(1, 1) = Complex(-2.0 / x.spacing, 0.0);
    CHECK_THROWS_WITH_AS(DensityMatrix(x, indef), doctest::Contains("positive semidefinite"),
                         std::invalid_argument);

    CHECK_THROWS_AS(DensityMatrix::from_ensemble({0.5}, {densities::gaussian_ground_state(x)}),
                    std::invalid_argument);
}

TEST_CASE("density matrix reversal conjugates the kernel") {
    auto x = small_grid(24, 0.4);
    // real-kernel state is fixed
    auto real_rho = DensityMatrix::from_ensemble({1.0}, {densities::gaussian_ground_state(x)});
    auto fixed = densities::density_matrix_reversal(real_rho);
    CHECK((fixed.kernel() - real_rho.kernel()).cwiseAbs().maxCoeff() == 0.0);

    core::Rng rng(77);
    auto psi = densities::seeded_wavefunction(x, rng);
    auto pure = DensityMatrix::from_ensemble({1.0}, {psi});
    auto conj_pure =
        DensityMatrix::from_ensemble({1.0}, {densities::wavefunction_reversal(psi)});
    auto rev = densities::density_matrix_reversal(pure);
    CHECK((rev.kernel() - conj_pure.kernel()).cwiseAbs().maxCoeff() == 0.0);

    auto rho = densities::seeded_density_matrix(x, rng);
    auto twice = densities::density_matrix_reversal(densities::density_matrix_reversal(rho));
    CHECK((twice.kernel() - rho.kernel()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((densities::density_matrix_reversal(rho).eigenvalues() - rho.eigenvalues())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}

TEST_CASE("real/imag split is exact field extraction") {
    auto x = small_grid(12, 0.5);
    core::Rng rng(31);
    auto kernel = densities::seeded_density_matrix(x, rng).kernel();
    auto [re, im] = densities::real_imag_split(kernel);
    CHECK((re + im - kernel).cwiseAbs().maxCoeff() == 0.0);
    CHECK((re.conjugate() - re).cwiseAbs().maxCoeff() == 0.0);
    CHECK((im.conjugate() + im).cwiseAbs().maxCoeff() == 0.0);
    auto [re2, im2] = densities::real_imag_split(re);
    CHECK((re2 - re).cwiseAbs().maxCoeff() == 0.0);
    CHECK(im2.cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXcd pure_imag = Eigen::MatrixXcd::Zero(4, 4);
    pure_imag(0, 1) = Complex(0.0, 0.7);
    pure_imag(1, 0) = Complex(0.0, -0.7);
    auto [zr, zi] = densities::real_imag_split(pure_imag);
    CHECK(zr.cwiseAbs().maxCoeff() == 0.0);
    CHECK((zi - pure_imag).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wigner transform reproduces the analytic Gaussian") {
    auto x = densities::default_x_grid();
    auto rho = DensityMatrix::from_ensemble({1.0}, {densities::gaussian_ground_state(x)});
    auto w = densities::wigner_transform(rho);
    double worst = 0.0;
    for (int i = 0; i < x.count; ++i)
        for (int j = 0; j < w.pgrid().count; ++j) {
            double qv = x.coord(i), pv = w.pgrid().coord(j);
            double expected = std::exp(-qv * qv - pv * pv) / std::numbers::pi;
            worst = std::max(worst, std::fabs(w.value(i, j) - expected));
        }
    CHECK(worst <= 1e-6);
}

TEST_CASE("wigner marginals and totals") {
    auto x = densities::default_x_grid();
    core::Rng rng(9);
    auto rho = densities::seeded_density_matrix(x, rng);
    auto w = densities::wigner_transform(rho);
    for (int i = 0; i < x.count; ++i) {
        double marginal = w.values().row(i).sum() * w.pgrid().spacing;
        CHECK(std::fabs(marginal - rho.kernel()(i, i).real()) <= 1e-6);
    }
    CHECK(std::fabs(w.total_mass() - 1.0) <= 1e-6);
}

TEST_CASE("wigner morphism identity") {
    auto x = densities::default_x_grid();
    core::Rng rng(123);
    for (int trial = 0; trial < 5; ++trial) {
        auto rho = densities::seeded_density_matrix(x, rng);
        auto r = densities::check_wigner_morphism(rho, 1e-12);
        CHECK(r.passed);
        CHECK(r.max_violation == 0.0);
    }
    // real-kernel densities are fixed points of the reversal
    auto real_rho = DensityMatrix::from_ensemble({1.0}, {densities::gaussian_ground_state(x)});
    CHECK(densities::check_wigner_morphism(real_rho, 1e-12).max_violation == 0.0);

    // half/half mixture of a state and its conjugate has a p-even Wigner fn
    core::Rng rng2(5);
    auto psi = densities::seeded_wavefunction(x, rng2);
    auto mix = DensityMatrix::from_ensemble({0.5, 0.5},
                                            {psi, densities::wavefunction_reversal(psi)});
    auto wm = densities::wigner_transform(mix);
    CHECK(core::distance(densities::induced_reversal_classical(wm), wm) <= 1e-12);
}

TEST_CASE("wigner error paths") {
    auto x = small_grid(8, 0.5);
    // (2,4) sits on a lambda pair around i = 3; its missing conjugate
    // partner leaves an O(1) imaginary residue
    Eigen::MatrixXcd lopsided = Eigen::MatrixXcd::Zero(8, 8);
    lopsided(2, 4) = Complex(1.0, 0.5);
    CHECK_THROWS_WITH_AS(densities::wigner_transform_kernel(x, lopsided),
                         doctest::Contains("hermiticity violated"), std::runtime_error);
    GridSpec bad{8, 0.5, 0.25};
    CHECK_THROWS_WITH_AS(densities::wigner_transform_kernel(bad, lopsided),
                         doctest::Contains("asymmetric"), std::invalid_argument);
}
