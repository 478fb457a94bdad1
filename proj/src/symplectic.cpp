#include "revstruct/symplectic.hpp"

#include <cmath>

namespace revstruct::symplectic {

PhasePoint reversal_K(const PhasePoint& m) { return PhasePoint(m.q, -m.p); }

TangentVector pushforward_K(const TangentVector& x) {
    return TangentVector(reversal_K(x.base), x.dq, -x.dp);
}

namespace {
void require_same_base(const TangentVector& x, const TangentVector& y) {
    if (!(x.base == y.base))
        throw std::invalid_argument("base mismatch: tangent vectors live at different points");
}
}  // namespace

double omega(const TangentVector& x, const TangentVector& y) {
    require_same_base(x, y);
    return x.dq.dot(y.dp) - x.dp.dot(y.dq);
}

TangentVector apply_J(const TangentVector& x) {
    return TangentVector(x.base, -x.dp, x.dq);
}

double metric_g(const TangentVector& x, const TangentVector& y) {
    return -omega(x, apply_J(y));
}

HamiltonianFlow::HamiltonianFlow(FlowKind kind, double mass, double frequency)
    : kind_(kind), mass_(mass), frequency_(frequency) {
    if (mass <= 0.0 || frequency <= 0.0)
        throw std::invalid_argument("mass and frequency must be positive");
}

PhasePoint HamiltonianFlow::exact_at(double t, const PhasePoint& m) const {
    switch (kind_) {
        case FlowKind::free_particle:
            return PhasePoint(m.q + (t / mass_) * m.p, m.p);
        case FlowKind::harmonic_oscillator: {
            const double c = std::cos(frequency_ * t);
            const double s = std::sin(frequency_ * t);
            Vector q = c * m.q + (s / (mass_ * frequency_)) * m.p;
            Vector p = -(mass_ * frequency_ * s) * m.q + c * m.p;
            return PhasePoint(std::move(q), std::move(p));
        }
    }
    throw std::invalid_argument("unsupported flow kind");
}

Vector HamiltonianFlow::force(const Vector& q) const {
    if (kind_ == FlowKind::free_particle) return Vector::Zero(q.size());
    return -(mass_ * frequency_ * frequency_) * q;
}

PhasePoint HamiltonianFlow::leapfrog_at(double dt, long steps, const PhasePoint& m) const {
    Vector q = m.q;
    Vector p = m.p;
    for (long i = 0; i < steps; ++i) {
        Vector phalf = p + (0.5 * dt) * force(q);
        q = q + (dt / mass_) * phalf;
        p = phalf + (0.5 * dt) * force(q);
    }
    return PhasePoint(std::move(q), std::move(p));
}

core::Flow<PhasePoint> HamiltonianFlow::as_flow() const {
    core::Flow<PhasePoint> f;
    f.space_id = "phase_space";
    f.class_id = kind_ == FlowKind::free_particle ? "free_particle" : "harmonic_oscillator";
    HamiltonianFlow copy = *this;
    f.at_time = [copy](double t, const PhasePoint& m) { return copy.exact_at(t, m); };
    return f;
}

core::Reversal<PhasePoint> momentum_reversal(int n) {
    PhasePoint witness(Vector::Zero(n), Vector::Ones(n));
    return core::make_reversal<PhasePoint>(
        "phase_space", [](const PhasePoint& m) { return reversal_K(m); }, witness,
        [](const PhasePoint& m) { return m.p.isZero(0.0); });
}

core::Sampler<PhasePoint> gaussian_phase_sampler(int n) {
    return {"phase_space", [n](core::Rng& rng) {
                std::normal_distribution<double> g(0.0, 1.0);
                Vector q(n), p(n);
                for (int i = 0; i < n; ++i) q[i] = g(rng);
                for (int i = 0; i < n; ++i) p[i] = g(rng);
                return PhasePoint(std::move(q), std::move(p));
            }};
}

std::pair<TangentVector, TangentVector> random_tangent_pair(int n, core::Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    auto vec = [&] {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = g(rng);
        return v;
    };
    PhasePoint base(vec(), vec());
    TangentVector x(base, vec(), vec());
    TangentVector y(base, vec(), vec());
    return {std::move(x), std::move(y)};
}

core::VerificationReport check_sr(int n, std::size_t samples, double tol, std::uint64_t seed) {
    core::Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, y] = random_tangent_pair(n, rng);
        worst = std::max(worst, std::fabs(omega(pushforward_K(x), pushforward_K(y)) + omega(x, y)));
    }
    return core::VerificationReport::make("eq_2_10", samples, worst, tol, seed);
}

core::VerificationReport check_cr(int n, std::size_t samples, double tol, std::uint64_t seed) {
    core::Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, y] = random_tangent_pair(n, rng);
        TangentVector lhs = pushforward_K(apply_J(x));
        TangentVector rhs = apply_J(pushforward_K(x));
        double v = std::max((lhs.dq + rhs.dq).cwiseAbs().maxCoeff(),
                            (lhs.dp + rhs.dp).cwiseAbs().maxCoeff());
        worst = std::max(worst, v);
    }
    return core::VerificationReport::make("eq_1_1", samples, worst, tol, seed);
}

core::VerificationReport check_isometry(int n, std::size_t samples, double tol,
                                        std::uint64_t seed) {
    core::Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, y] = random_tangent_pair(n, rng);
        worst = std::max(worst,
                         std::fabs(metric_g(pushforward_K(x), pushforward_K(y)) - metric_g(x, y)));
    }
    return core::VerificationReport::make("eq_1_3", samples, worst, tol, seed);
}

core::VerificationReport check_compatibility(int n, std::size_t samples, double tol,
                                             std::uint64_t seed) {
    core::Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, y] = random_tangent_pair(n, rng);
        worst = std::max(worst, std::fabs(metric_g(x, y) + omega(x, apply_J(y))));
    }
    return core::VerificationReport::make("eq_1_4", samples, worst, tol, seed);
}

core::VerificationReport check_flow_reversal(const HamiltonianFlow& flow, FlowMode mode,
                                             const std::vector<double>& times,
                                             std::size_t samples, double tol,
                                             std::uint64_t seed, double dt) {
    if (times.empty()) throw std::invalid_argument("no times supplied");
    core::Rng rng(seed);
    const int n = 1;
    auto sampler = gaussian_phase_sampler(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        PhasePoint m = sampler.draw(rng);
        for (double t : times) {
            PhasePoint lhs, rhs;
            if (mode == FlowMode::exact) {
                lhs = reversal_K(flow.exact_at(t, reversal_K(m)));
                rhs = flow.exact_at(-t, m);
            } else {
                long steps = std::lround(std::fabs(t) / dt);
                double step_dt = t < 0 ? -dt : dt;
                lhs = reversal_K(flow.leapfrog_at(step_dt, steps, reversal_K(m)));
                rhs = flow.leapfrog_at(-step_dt, steps, m);
            }
            worst = std::max(worst, core::distance(lhs, rhs));
        }
    }
    return core::VerificationReport::make("eq_1_5", samples * times.size(), worst, tol, seed);
}

}  // namespace revstruct::symplectic
