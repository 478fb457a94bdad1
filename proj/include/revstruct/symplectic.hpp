// Phase space T*(R^n): the momentum-flip reversal, the canonical 2-form,
// the almost complex structure J and the metric g = -omega(., J.), plus
// closed-form and leapfrog Hamiltonian flows used for Eq (1.5) checks.

#pragma once

#include <Eigen/Dense>

#include "revstruct/core.hpp"

namespace revstruct::symplectic {

using Vector = Eigen::VectorXd;

struct PhasePoint {
    Vector q;
    Vector p;

    PhasePoint() = default;
    PhasePoint(Vector q_, Vector p_) : q(std::move(q_)), p(std::move(p_)) {
        if (q.size() != p.size() || q.size() < 1)
            throw std::invalid_argument("phase point needs matching q/p of dimension >= 1");
    }
    Eigen::Index dim() const { return q.size(); }
    bool operator==(const PhasePoint& o) const { return q == o.q && p == o.p; }
};

struct TangentVector {
    PhasePoint base;
    Vector dq;
    Vector dp;

    TangentVector() = default;
    TangentVector(PhasePoint base_, Vector dq_, Vector dp_)
        : base(std::move(base_)), dq(std::move(dq_)), dp(std::move(dp_)) {
        if (dq.size() != base.dim() || dp.size() != base.dim())
            throw std::invalid_argument("tangent components must match the base dimension");
    }
};

// K(q, p) = (q, -p); N is the zero-momentum section.
PhasePoint reversal_K(const PhasePoint& m);
// K_*: horizontal part fixed, vertical part negated; base moves with K.
TangentVector pushforward_K(const TangentVector& x);

// omega(X, Y) = sum_i dq_i dp'_i - dp_i dq'_i; requires a shared base.
double omega(const TangentVector& x, const TangentVector& y);
// J: (dq, dp) -> (-dp, dq), the canonical conjugate; J^2 = -I.
TangentVector apply_J(const TangentVector& x);
// g(X, Y) = -omega(X, J Y). Note this convention makes g(d/dq, d/dq) = -1;
// only its K-invariance is asserted, never a signature.
double metric_g(const TangentVector& x, const TangentVector& y);

// Bundle of the canonical structures on a fixed-dimension phase space.
struct CanonicalStructures {
    int n;
    double omega(const TangentVector& x, const TangentVector& y) const {
        return symplectic::omega(x, y);
    }
    TangentVector J(const TangentVector& x) const { return apply_J(x); }
    double g(const TangentVector& x, const TangentVector& y) const { return metric_g(x, y); }
};

enum class FlowKind { harmonic_oscillator, free_particle };
enum class FlowMode { exact, leapfrog };

class HamiltonianFlow {
public:
    HamiltonianFlow(FlowKind kind, double mass = 1.0, double frequency = 1.0);

    FlowKind kind() const { return kind_; }
    PhasePoint exact_at(double t, const PhasePoint& m) const;
    // Velocity-Verlet trajectory; dt may be negative for backward time.
    PhasePoint leapfrog_at(double dt, long steps, const PhasePoint& m) const;
    core::Flow<PhasePoint> as_flow() const;

private:
    Vector force(const Vector& q) const;  // -dV/dq

    FlowKind kind_;
    double mass_;
    double frequency_;
};

core::Reversal<PhasePoint> momentum_reversal(int n);
core::Sampler<PhasePoint> gaussian_phase_sampler(int n);

// Random tangent pair at a random base (standard normal components).
std::pair<TangentVector, TangentVector> random_tangent_pair(int n, core::Rng& rng);

// (s.r.), Eq (2.10): |omega(K_* X, K_* Y) + omega(X, Y)| over sampled pairs.
core::VerificationReport check_sr(int n, std::size_t samples, double tol, std::uint64_t seed);
// (c.r.), Eq (1.1): componentwise |K_*(J X) + J(K_* X)|.
core::VerificationReport check_cr(int n, std::size_t samples, double tol, std::uint64_t seed);
// Eq (1.3): |g(K_* X, K_* Y) - g(X, Y)|.
core::VerificationReport check_isometry(int n, std::size_t samples, double tol, std::uint64_t seed);
// Definition guard: g(X, Y) + omega(X, J Y) = 0 identically.
core::VerificationReport check_compatibility(int n, std::size_t samples, double tol,
                                             std::uint64_t seed);

// Eq (1.5) for a Hamiltonian flow: max distance of K S_t K m from S_{-t} m.
// Leapfrog mode integrates each time with the given dt.
core::VerificationReport check_flow_reversal(const HamiltonianFlow& flow, FlowMode mode,
                                             const std::vector<double>& times,
                                             std::size_t samples, double tol,
                                             std::uint64_t seed, double dt = 1e-3);

}  // namespace revstruct::symplectic

namespace revstruct::core {

template <>
struct SpaceTraits<symplectic::PhasePoint> {
    static constexpr bool exact = false;
    static double distance(const symplectic::PhasePoint& a, const symplectic::PhasePoint& b) {
        double d = (a.q - b.q).cwiseAbs().maxCoeff();
        return std::max(d, (a.p - b.p).cwiseAbs().maxCoeff());
    }
};

}  // namespace revstruct::core
