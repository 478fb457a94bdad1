// Reversal systems, flows/cascades, morphisms and the sampling-based
// verification engine. State spaces plug in through SpaceTraits; exact
// spaces report 0/1 distances, metric spaces report real distances.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace revstruct::core {

using Rng = std::mt19937_64;

// Structured outcome of one law check. passed <=> max_violation <= tolerance.
struct VerificationReport {
    std::string law_id;
    std::size_t samples_tested = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::uint64_t seed = 0;

    static VerificationReport make(std::string law_id, std::size_t samples,
                                   double max_violation, double tolerance,
                                   std::uint64_t seed) {
        VerificationReport r;
        r.law_id = std::move(law_id);
        r.samples_tested = samples;
        r.max_violation = max_violation;
        r.tolerance = tolerance;
        r.passed = max_violation <= tolerance;
        r.seed = seed;
        return r;
    }

    nlohmann::ordered_json to_json() const;
};

// Per-space metric/equality hook. Specialize for every state type.
// distance() must return 0.0 exactly when states are indistinguishable;
// exact spaces use a 0/1 (or mismatch-count) discrete distance.
template <class S>
struct SpaceTraits;

template <>
struct SpaceTraits<double> {
    static constexpr bool exact = false;
    static double distance(double a, double b) { return std::fabs(a - b); }
};

using Vec4 = std::array<double, 4>;

template <>
struct SpaceTraits<Vec4> {
    static constexpr bool exact = false;
    static double distance(const Vec4& a, const Vec4& b) {
        double d = 0.0;
        for (int i = 0; i < 4; ++i) d = std::max(d, std::fabs(a[i] - b[i]));
        return d;
    }
};

template <class S>
double distance(const S& a, const S& b) {
    return SpaceTraits<S>::distance(a, b);
}

// Fixed-point detection threshold on floating-point spaces; exact spaces
// compare for equality (distance 0).
inline constexpr double kFixedPointTol = 1e-12;

enum class Orientation { plus, minus, fixed };

// Seeded state generator tagged with the space it draws from.
template <class S>
struct Sampler {
    std::string space_id;
    std::function<S(Rng&)> draw;
};

// A reversal K: involution with thin fixed set N. orientation, when
// present, 2-colors M - N and must be swapped by K.
template <class S>
struct Reversal {
    std::string space_id;
    std::function<S(const S&)> apply;
    std::function<bool(const S&)> fixed;
    std::function<Orientation(const S&)> orientation;  // may be null
};

// Builds a Reversal, deriving the fixed predicate from the metric when
// none is given, and rejecting trivial involutions: the caller must name
// a witness state that K actually moves (the identity map has none).
template <class S>
Reversal<S> make_reversal(std::string space_id, std::function<S(const S&)> apply,
                          const S& moving_witness,
                          std::function<bool(const S&)> fixed = nullptr,
                          std::function<Orientation(const S&)> orientation = nullptr) {
    if (distance(apply(moving_witness), moving_witness) == 0.0)
        throw std::invalid_argument("trivial involution: witness state is fixed");
    Reversal<S> k;
    k.space_id = std::move(space_id);
    k.apply = std::move(apply);
    if (fixed) {
        k.fixed = std::move(fixed);
    } else {
        auto ap = k.apply;
        k.fixed = [ap](const S& m) {
            double tol = SpaceTraits<S>::exact ? 0.0 : kFixedPointTol;
            return distance(ap(m), m) <= tol;
        };
    }
    k.orientation = std::move(orientation);
    return k;
}

// Continuous-time dynamics S_t, t real.
template <class S>
struct Flow {
    std::string space_id;
    std::string class_id;
    std::function<S(double, const S&)> at_time;
    bool negative_time_ok = true;
};

// Discrete-time dynamics S^t, t integer. inverse_step may be null for an
// irreversible endomap.
template <class S>
struct Cascade {
    std::string space_id;
    std::function<S(const S&)> step;
    std::function<S(const S&)> inverse_step;

    S at(std::int64_t t, S m) const {
        if (t < 0 && !inverse_step)
            throw std::invalid_argument("irreversible dynamics supplied");
        for (std::int64_t i = 0; i < t; ++i) m = step(m);
        for (std::int64_t i = 0; i > t; --i) m = inverse_step(m);
        return m;
    }
};

template <class SA, class SB>
struct Morphism {
    std::string domain_id;
    std::string codomain_id;
    std::function<SB(const SA&)> map;
};

namespace detail {
template <class S>
void require_same_space(const std::string& a, const std::string& b) {
    if (a != b) throw std::invalid_argument("domain mismatch: " + a + " vs " + b);
}
}  // namespace detail

// (r.1): K(K(m)) = m over n sampled states.
template <class S>
VerificationReport verify_involution(const Reversal<S>& k, const Sampler<S>& sampler,
                                     std::size_t n, std::uint64_t seed,
                                     std::string law_id = "r_1_involution",
                                     double tol = 0.0) {
    if (n == 0) throw std::invalid_argument("no samples");
    detail::require_same_space<S>(k.space_id, sampler.space_id);
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        S m = sampler.draw(rng);
        worst = std::max(worst, distance(k.apply(k.apply(m)), m));
        // fixed predicate must agree with the metric fixed-point test
        double ftol = SpaceTraits<S>::exact ? 0.0 : kFixedPointTol;
        bool metric_fixed = distance(k.apply(m), m) <= ftol;
        if (metric_fixed != k.fixed(m)) worst = std::max(worst, 1.0);
    }
    return VerificationReport::make(std::move(law_id), n, worst, tol, seed);
}

// Eq (1.0): orientation(K(m)) swaps plus/minus and fixes fixed.
template <class S>
VerificationReport verify_orientation(const Reversal<S>& k, const Sampler<S>& sampler,
                                      std::size_t n, std::uint64_t seed,
                                      std::string law_id = "eq_1_0_orientation") {
    if (n == 0) throw std::invalid_argument("no samples");
    if (!k.orientation) throw std::invalid_argument("reversal carries no orientation");
    detail::require_same_space<S>(k.space_id, sampler.space_id);
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        S m = sampler.draw(rng);
        Orientation before = k.orientation(m);
        Orientation after = k.orientation(k.apply(m));
        bool ok = (before == Orientation::plus && after == Orientation::minus) ||
                  (before == Orientation::minus && after == Orientation::plus) ||
                  (before == Orientation::fixed && after == Orientation::fixed);
        if (!ok) worst = 1.0;
    }
    return VerificationReport::make(std::move(law_id), n, worst, 0.0, seed);
}

// Eq (1.5) for flows: K(S_t(K(m))) = S_{-t}(m) over samples x times.
template <class S>
VerificationReport verify_time_reversal(const Reversal<S>& k, const Flow<S>& dyn,
                                        const Sampler<S>& sampler,
                                        const std::vector<double>& times, double tol,
                                        std::size_t n, std::uint64_t seed,
                                        std::string law_id = "eq_1_5") {
    if (times.empty()) throw std::invalid_argument("no times supplied");
    if (n == 0) throw std::invalid_argument("no samples");
    detail::require_same_space<S>(k.space_id, dyn.space_id);
    detail::require_same_space<S>(k.space_id, sampler.space_id);
    if (!dyn.negative_time_ok)
        throw std::invalid_argument("irreversible dynamics supplied");
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        S m = sampler.draw(rng);
        for (double t : times) {
            S lhs = k.apply(dyn.at_time(t, k.apply(m)));
            S rhs = dyn.at_time(-t, m);
            worst = std::max(worst, distance(lhs, rhs));
        }
    }
    return VerificationReport::make(std::move(law_id), n * times.size(), worst, tol, seed);
}

// Eq (1.5) for cascades, t integer.
template <class S>
VerificationReport verify_time_reversal(const Reversal<S>& k, const Cascade<S>& dyn,
                                        const Sampler<S>& sampler,
                                        const std::vector<std::int64_t>& times, double tol,
                                        std::size_t n, std::uint64_t seed,
                                        std::string law_id = "eq_1_5") {
    if (times.empty()) throw std::invalid_argument("no times supplied");
    if (n == 0) throw std::invalid_argument("no samples");
    detail::require_same_space<S>(k.space_id, dyn.space_id);
    detail::require_same_space<S>(k.space_id, sampler.space_id);
    for (std::int64_t t : times)
        if (t > 0 && !dyn.inverse_step)
            throw std::invalid_argument("irreversible dynamics supplied");
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        S m = sampler.draw(rng);
        for (std::int64_t t : times) {
            S lhs = k.apply(dyn.at(t, k.apply(m)));
            S rhs = dyn.at(-t, m);
            worst = std::max(worst, distance(lhs, rhs));
        }
    }
    return VerificationReport::make(std::move(law_id), n * times.size(), worst, tol, seed);
}

// Eqs (1.6)/(1.8): f o K = K' o f over samples.
template <class SA, class SB>
VerificationReport verify_morphism(const Morphism<SA, SB>& f, const Reversal<SA>& ka,
                                   const Reversal<SB>& kb, const Sampler<SA>& sampler,
                                   double tol, std::size_t n, std::uint64_t seed,
                                   std::string law_id = "eq_1_6") {
    if (n == 0) throw std::invalid_argument("no samples");
    if (f.domain_id != ka.space_id)
        throw std::invalid_argument("domain mismatch: " + f.domain_id + " vs " + ka.space_id);
    if (f.codomain_id != kb.space_id)
        throw std::invalid_argument("codomain mismatch: " + f.codomain_id + " vs " + kb.space_id);
    detail::require_same_space<SA>(f.domain_id, sampler.space_id);
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        SA m = sampler.draw(rng);
        worst = std::max(worst, distance(f.map(ka.apply(m)), kb.apply(f.map(m))));
    }
    return VerificationReport::make(std::move(law_id), n, worst, tol, seed);
}

// (a.r.2) evidence: fraction of sampled states fixed by K.
template <class S>
double measure_fixed_fraction(const Reversal<S>& k, const Sampler<S>& sampler,
                              std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("no samples");
    detail::require_same_space<S>(k.space_id, sampler.space_id);
    Rng rng(seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (k.fixed(sampler.draw(rng))) ++hits;
    return static_cast<double>(hits) / static_cast<double>(n);
}

// ---- canonical examples -------------------------------------------------

// K(t) = -t on the real line, N = {0}, oriented by sign.
Reversal<double> real_line_reversal();
Sampler<double> uniform_line_sampler(double lo, double hi);
Flow<double> real_translation_flow(double a);  // S_t(x) = x + t a

// K(ct,x,y,z) = (-ct,x,y,z) on Minkowski space, N = {t = 0} hyperplane.
Reversal<Vec4> minkowski_reversal();
Sampler<Vec4> minkowski_box_sampler(double half_width);
Sampler<Vec4> minkowski_spatial_slice_sampler(double half_width);  // t = 0
Flow<Vec4> minkowski_translation_flow(double a0);  // X + t (a0,0,0,0)

}  // namespace revstruct::core
