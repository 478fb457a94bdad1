// Baker's transformation in exact dyadic arithmetic, the diagonal-flip
// reversal, the conjugacy with B(1/2,1/2), the theta_F age eigenfunctions
// and the Aging operator with its imprimitivity system.

#pragma once

#include <cstdint>
#include <vector>

#include "revstruct/bernoulli.hpp"
#include "revstruct/core.hpp"
#include "revstruct/exactnum.hpp"

namespace revstruct::baker {

using exact::BilateralWord;
using exact::Dyadic;
using exact::Rational;
using exact::TorusPoint;

// S(x,y) = (2x, y/2) for x in [0,1/2), (2x-1, (y+1)/2) for x in [1/2,1).
TorusPoint baker_step(const TorusPoint& m);
// S^{-1}(x,y) = (x/2, 2y) for y in [0,1/2), ((x+1)/2, 2y-1) for y in [1/2,1).
TorusPoint baker_inverse(const TorusPoint& m);
// K[x,y] = [y,x]; fixed set is the projected diagonal.
TorusPoint torus_reversal(const TorusPoint& m);
// S^t for any integer t.
TorusPoint iterate(const TorusPoint& m, std::int64_t t);

core::Cascade<TorusPoint> baker_cascade();
core::Reversal<TorusPoint> baker_reversal_system();

// K o S^t o K = S^{-t} with exact equality over every dyadic grid point of
// the given exponent and every |t| <= t_max.
core::VerificationReport check_baker_reversal(int t_max, unsigned grid_exponent);

// S maps dyadic cells to rectangles of equal exact area, injectively.
core::VerificationReport check_measure_preservation(unsigned grid_exponent);

// Binary-expansion conjugacy with B(1/2,1/2): encode o S = shift o encode
// and encode o K = reverse o encode, exactly, on every dyadic grid point.
core::VerificationReport conjugacy_check(unsigned grid_exponent, int window_radius);

// Lebesgue area of the encode-preimage of each rank <= max_rank cylinder
// with indices in [-index_radius, index_radius] equals its product measure,
// exactly. The area side is computed by counting dyadic subintervals.
core::VerificationReport measure_correspondence_check(int max_rank, int index_radius);

// theta observable indexed by a finite non-empty set F of integers.
class ThetaFunction {
public:
    explicit ThetaFunction(std::vector<int> indices);
    const std::vector<int>& indices() const { return idx_; }  // sorted, unique
    int min_index() const { return idx_.front(); }
    int max_index() const { return idx_.back(); }
    bool operator==(const ThetaFunction& o) const { return idx_ == o.idx_; }

private:
    std::vector<int> idx_;
};

// theta_0: +1 on A = [0,1/2) x [0,1), -1 on B.
int theta0(const TorusPoint& m);
// theta_F(m) = prod_{n in F} theta_0(S^{-n}(m)).
int theta_eval(const ThetaFunction& f, const TorusPoint& m);

// Index map of theta_F o K: F -> {1 - n : n in F}.
ThetaFunction reversal_on_theta(const ThetaFunction& f);
// Index map of U_t theta_F = theta_{F+t}.
ThetaFunction koopman_shift(const ThetaFunction& f, int t);

// Exact rational integral of theta_F * theta_G over the square, computed
// by refining to the coarsest dyadic partition on which both are constant.
Rational theta_inner_product(const ThetaFunction& f, const ThetaFunction& g);

// Spectral representation of the Aging operator on the finite theta basis
// {theta_F : F subset of [-window_radius, window_radius], |F| <= max_factors}.
class AgingOperator {
public:
    AgingOperator(int window_radius, int max_factors);

    int window_radius() const { return radius_; }
    int max_factors() const { return cap_; }
    const std::vector<ThetaFunction>& basis() const { return basis_; }
    bool in_window(const ThetaFunction& f) const;

    // T theta_F = (max F) theta_F.
    int age(const ThetaFunction& f) const;
    // Cumulative spectral projector E_s: keeps theta_F iff max F <= s.
    bool spectral_keeps(int s, const ThetaFunction& f) const;
    // U_t theta_F = theta_{F+t}; the shifted set must stay in the window.
    ThetaFunction koopman(const ThetaFunction& f, int t) const;

    // T assembled from the spectral family (sum over s of s (E_s - E_{s-1}))
    // reproduces the eigenvalue max F on every basis element, and exactly
    // one eigenspace projector fires per element.
    core::VerificationReport check_spectral_decomposition() const;
    // U_{-t} T U_t = T + t on every basis element.
    core::VerificationReport check_aging_commutation(int t) const;
    // E_{s+t} = U_t E_s U_t^{-1} on every basis element; index arithmetic
    // keeps both sides total even near the window edge.
    core::VerificationReport check_imprimitivity(int s, int t) const;
    // theta-level image of Eq (5.3): R o U_{+1} o R = U_{-1} on the basis.
    core::VerificationReport check_reversal_conjugates_koopman() const;

private:
    int radius_;
    int cap_;
    std::vector<ThetaFunction> basis_;
};

// aging_apply: eigenvalue (max F) plus the unchanged eigenfunction.
std::pair<int, ThetaFunction> aging_apply(const AgingOperator& op, const ThetaFunction& f);

// 2^k x 2^k raster of theta_F; cell (ix, iy) holds the constant value on
// [ix 2^-k, (ix+1) 2^-k) x [iy 2^-k, (iy+1) 2^-k), entries +-1.
std::vector<std::vector<int>> rasterize_theta(const ThetaFunction& f, int resolution_exponent);
// Raster of the S^t image of the generating partition {A, B} = theta_t.
std::vector<std::vector<int>> rasterize_partition(int t, int resolution_exponent);

}  // namespace revstruct::baker
