// Induced reversals on classical phase-space densities and quantum density
// kernels, even/odd and real/imaginary projector splits, the rational
// conjugation space, and the discretized Wigner transform as a morphism of
// reversal systems.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>

#include "revstruct/core.hpp"
#include "revstruct/exactnum.hpp"
#include "revstruct/symplectic.hpp"

namespace revstruct::densities {

using Complex = std::complex<double>;
using exact::Rational;

// Uniform lattice, mirror-symmetric about the origin when offset == 0.
// Even counts use half-offset nodes +-(k+1/2)h, odd counts include 0; in
// both cases coord(count-1-i) == -coord(i) bitwise.
struct GridSpec {
    int count = 0;
    double spacing = 0.0;
    double offset = 0.0;

    double coord(int i) const;
    int mirror(int i) const { return count - 1 - i; }
    bool symmetric() const { return offset == 0.0; }
    bool operator==(const GridSpec& o) const {
        return count == o.count && spacing == o.spacing && offset == o.offset;
    }
};

// Default spatial grid: 64 points, spacing 3/16, spanning about [-6, 6].
GridSpec default_x_grid();
// Conjugate momentum grid with spacing pi / (count * dx); this spacing is
// what makes the discrete Wigner marginal identity exact.
GridSpec conjugate_p_grid(const GridSpec& x);

// Phase-space density on a (q, p) lattice. Proper densities are
// nonnegative with unit total; Wigner outputs and projector parts are
// signed, so validation is selected at construction.
class ClassicalDensityGrid {
public:
    static ClassicalDensityGrid density(GridSpec q, GridSpec p, Eigen::MatrixXd values);
    static ClassicalDensityGrid signed_grid(GridSpec q, GridSpec p, Eigen::MatrixXd values);

    const GridSpec& qgrid() const { return qgrid_; }
    const GridSpec& pgrid() const { return pgrid_; }
    const Eigen::MatrixXd& values() const { return values_; }  // (iq, ip)
    double value(int iq, int ip) const { return values_(iq, ip); }
    double total_mass() const { return values_.sum() * qgrid_.spacing * pgrid_.spacing; }

private:
    ClassicalDensityGrid(GridSpec q, GridSpec p, Eigen::MatrixXd v, bool validate);

    GridSpec qgrid_;
    GridSpec pgrid_;
    Eigen::MatrixXd values_;
};

// Eq (2.11): (K rho)(q, p) = rho(q, -p); exact index relabeling.
ClassicalDensityGrid induced_reversal_classical(const ClassicalDensityGrid& rho);

// Eqs (2.12)-(2.13): K-even and K-odd parts. The even part is bitwise
// p-symmetric and the odd part bitwise p-antisymmetric; the sum
// reconstructs the input exactly whenever the grid values carry few enough
// significant bits for the pair arithmetic to be rounding-free (the seeded
// generators below quantize to guarantee that).
std::pair<ClassicalDensityGrid, ClassicalDensityGrid> even_odd_split(
    const ClassicalDensityGrid& rho);

// Eq (2.14): (U_t rho)(m) = rho(S_{-t}(m)) by bilinear pullback along a
// closed-form flow. Throws "support escape" when the pullback demonstrably
// leaves the represented support (edge-supported input, or gross mass loss).
ClassicalDensityGrid induced_dynamics_classical(const ClassicalDensityGrid& rho,
                                                const symplectic::HamiltonianFlow& flow,
                                                double t);

class WaveFunctionGrid {
public:
    WaveFunctionGrid(GridSpec x, Eigen::VectorXcd psi);  // requires unit norm
    const GridSpec& xgrid() const { return xgrid_; }
    const Eigen::VectorXcd& values() const { return psi_; }
    double norm_squared() const;

private:
    GridSpec xgrid_;
    Eigen::VectorXcd psi_;
};

// Pointwise complex conjugation; fixed set is the real wave functions.
WaveFunctionGrid wavefunction_reversal(const WaveFunctionGrid& psi);

// Quantum density kernel rho(x, x') on a spatial grid: Hermitian, unit
// trace (sum of diagonal times dx), positive semidefinite.
class DensityMatrix {
public:
    DensityMatrix(GridSpec x, Eigen::MatrixXcd kernel);
    static DensityMatrix from_ensemble(const std::vector<double>& weights,
                                       const std::vector<WaveFunctionGrid>& states);

    const GridSpec& xgrid() const { return xgrid_; }
    const Eigen::MatrixXcd& kernel() const { return kernel_; }
    double trace() const;
    Eigen::VectorXd eigenvalues() const;

private:
    GridSpec xgrid_;
    Eigen::MatrixXcd kernel_;
};

// Eq (2.18) realized on kernels: elementwise conjugation (equivalently the
// transpose, by Hermiticity); exact involution, spectrum preserved.
DensityMatrix density_matrix_reversal(const DensityMatrix& rho);

// Eqs (2.19)-(2.20): K-real and K-imaginary kernel parts. Field extraction,
// so all three projector identities are bitwise exact.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> real_imag_split(const Eigen::MatrixXcd& kernel);

// Eq (2.21a) with the printed convention: rho(q,p) = (1/pi) * sum over
// lattice offsets lambda of kernel(q-lambda, q+lambda) e^{2 i p lambda} dx.
// The complex sum is accumulated in conjugate pairs; its imaginary residue
// is checked (error "hermiticity violated" beyond 1e-10) and discarded.
ClassicalDensityGrid wigner_transform(const DensityMatrix& rho);
ClassicalDensityGrid wigner_transform_kernel(const GridSpec& x, const Eigen::MatrixXcd& kernel);

// Eq (2.21c): sup over the grid of |W[K rho](q,p) - W[rho](q,-p)|.
core::VerificationReport check_wigner_morphism(const DensityMatrix& rho, double tol);

// Real 2n-dimensional space with basis {X_1..X_n, JX_1..JX_n} over exact
// rationals; K fixes the real block and negates the imaginary block.
struct ConjugationVector {
    std::vector<Rational> real_part;
    std::vector<Rational> imag_part;

    bool operator==(const ConjugationVector& o) const {
        return real_part == o.real_part && imag_part == o.imag_part;
    }
};

class ConjugationSpace {
public:
    explicit ConjugationSpace(int n);
    int dim() const { return n_; }

    ConjugationVector zero() const;
    ConjugationVector conjugation(const ConjugationVector& v) const;  // K, Eq (2.15)
    ConjugationVector apply_J(const ConjugationVector& v) const;      // (r, i) -> (-i, r)
    // S_t^A(X) = X + tA, Eq (2.16).
    ConjugationVector translate(const ConjugationVector& x, const Rational& t,
                                const ConjugationVector& a) const;
    bool purely_imaginary(const ConjugationVector& v) const;

private:
    void check_dims(const ConjugationVector& v) const;
    int n_;
};

// Eq (2.17): K S_t^A K = S_{-t}^A for imaginary-block translations, exact
// over rationals. Throws "not a non-real translation" if A has a real part.
core::VerificationReport conjugation_translation_check(int n, const ConjugationVector& a,
                                                       std::size_t samples,
                                                       const std::vector<Rational>& t_list,
                                                       std::uint64_t seed);

// ---- seeded generators used by suites and tests -------------------------

// Positive Gaussian-mixture density, normalized, then quantized to the
// 2^-40 dyadic lattice so the projector-split arithmetic is rounding-free.
// center_range/widths control how far the support reaches; pullback-based
// checks need it to die out well inside the box.
ClassicalDensityGrid seeded_classical_density(const GridSpec& q, const GridSpec& p,
                                              core::Rng& rng, double center_range = 2.0,
                                              double width_lo = 0.5, double width_hi = 1.5);
WaveFunctionGrid seeded_wavefunction(const GridSpec& x, core::Rng& rng);
// Random Hermitian positive-semidefinite density with exact (bitwise)
// Hermitian symmetry and unit trace.
DensityMatrix seeded_density_matrix(const GridSpec& x, core::Rng& rng, int rank = 4);
// Ground-state Gaussian psi(x) = pi^{-1/4} e^{-x^2/2} as a grid state.
WaveFunctionGrid gaussian_ground_state(const GridSpec& x);

}  // namespace revstruct::densities

namespace revstruct::core {

template <>
struct SpaceTraits<densities::ClassicalDensityGrid> {
    static constexpr bool exact = false;
    static double distance(const densities::ClassicalDensityGrid& a,
                           const densities::ClassicalDensityGrid& b) {
        return (a.values() - b.values()).cwiseAbs().maxCoeff();
    }
};

}  // namespace revstruct::core
