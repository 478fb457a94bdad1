#include "revstruct/suites.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "revstruct/baker.hpp"
#include "revstruct/bernoulli.hpp"
#include "revstruct/densities.hpp"
#include "revstruct/exactnum.hpp"
#include "revstruct/symplectic.hpp"

namespace revstruct::suites {

namespace {

using core::VerificationReport;
using exact::Rational;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

VerificationReport merge(std::string law_id, const std::vector<VerificationReport>& parts,
                         double tol, std::uint64_t seed) {
    std::size_t samples = 0;
    double worst = 0.0;
    for (const auto& r : parts) {
        samples += r.samples_tested;
        worst = std::max(worst, r.max_violation);
    }
    return VerificationReport::make(std::move(law_id), samples, worst, tol, seed);
}

struct Check {
    std::string suite;
    std::string law_id;
    std::function<VerificationReport(const SuiteConfig&, std::uint64_t seed)> run;
};

const std::vector<double> kFlowTimes = {0.1, -0.1, 1.0, -1.0, std::numbers::pi,
                                        -std::numbers::pi};

// ---- involution suite ----------------------------------------------------

VerificationReport real_line_involution(const SuiteConfig& cfg, std::uint64_t seed) {
    return core::verify_involution(core::real_line_reversal(),
                                   core::uniform_line_sampler(-10.0, 10.0), cfg.samples, seed,
                                   "eq_2_1", 0.0);
}

VerificationReport real_line_orientation(const SuiteConfig& cfg, std::uint64_t seed) {
    return core::verify_orientation(core::real_line_reversal(),
                                    core::uniform_line_sampler(-10.0, 10.0), cfg.samples, seed,
                                    "eq_1_0_real_line");
}

VerificationReport real_line_translations(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (double a : {1.0, 2.5, -0.75})
        parts.push_back(core::verify_time_reversal(core::real_line_reversal(),
                                                   core::real_translation_flow(a),
                                                   core::uniform_line_sampler(-5.0, 5.0),
                                                   kFlowTimes, 0.0, cfg.samples, seed));
    return merge("eq_2_2", parts, 0.0, seed);
}

VerificationReport minkowski_involution(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    parts.push_back(core::verify_involution(core::minkowski_reversal(),
                                            core::minkowski_box_sampler(5.0), cfg.samples, seed,
                                            "eq_2_3", 0.0));
    // the spacelike slice is pointwise fixed
    parts.push_back(core::verify_involution(core::minkowski_reversal(),
                                            core::minkowski_spatial_slice_sampler(5.0),
                                            cfg.samples, seed + 1, "eq_2_3", 0.0));
    return merge("eq_2_3", parts, 0.0, seed);
}

VerificationReport minkowski_orientation(const SuiteConfig& cfg, std::uint64_t seed) {
    return core::verify_orientation(core::minkowski_reversal(), core::minkowski_box_sampler(5.0),
                                    cfg.samples, seed, "eq_1_0_minkowski");
}

VerificationReport minkowski_translations(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (double a0 : {1.0, -3.0})
        parts.push_back(core::verify_time_reversal(core::minkowski_reversal(),
                                                   core::minkowski_translation_flow(a0),
                                                   core::minkowski_box_sampler(5.0), kFlowTimes,
                                                   0.0, cfg.samples, seed));
    return merge("eq_2_4", parts, 0.0, seed);
}

VerificationReport identity_morphism(const SuiteConfig& cfg, std::uint64_t seed) {
    core::Morphism<core::Vec4, core::Vec4> ident{"minkowski", "minkowski",
                                                 [](const core::Vec4& x) { return x; }};
    auto k = core::minkowski_reversal();
    return core::verify_morphism(ident, k, k, core::minkowski_box_sampler(5.0), 0.0, cfg.samples,
                                 seed, "eq_1_6_identity");
}

VerificationReport line_fixed_fraction(const SuiteConfig& cfg, std::uint64_t seed) {
    double fraction = core::measure_fixed_fraction(core::real_line_reversal(),
                                                   core::uniform_line_sampler(-1.0, 1.0),
                                                   cfg.samples, seed);
    return VerificationReport::make("a_r_2_real_line", cfg.samples, fraction, 0.0, seed);
}

// ---- symplectic suite ------------------------------------------------------

VerificationReport phase_involution(const SuiteConfig& cfg, std::uint64_t seed) {
    return core::verify_involution(symplectic::momentum_reversal(2),
                                   symplectic::gaussian_phase_sampler(2), cfg.samples, seed,
                                   "eq_2_5", 0.0);
}

VerificationReport symplectic_sr(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (int n : {1, 2, 5}) parts.push_back(symplectic::check_sr(n, cfg.samples, 1e-12, seed));
    return merge("eq_2_10", parts, 1e-12, seed);
}

VerificationReport symplectic_cr(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (int n : {1, 2, 5}) parts.push_back(symplectic::check_cr(n, cfg.samples, 1e-12, seed));
    return merge("eq_1_1", parts, 1e-12, seed);
}

VerificationReport symplectic_isometry(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (int n : {1, 2, 5})
        parts.push_back(symplectic::check_isometry(n, cfg.samples, 1e-12, seed));
    return merge("eq_1_3", parts, 1e-12, seed);
}

VerificationReport symplectic_compat(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (int n : {1, 2, 5})
        parts.push_back(symplectic::check_compatibility(n, cfg.samples, 1e-12, seed));
    return merge("eq_1_4", parts, 1e-12, seed);
}

VerificationReport omega_antisymmetry(const SuiteConfig& cfg, std::uint64_t seed) {
    core::Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        auto [x, y] = symplectic::random_tangent_pair(3, rng);
        worst = std::max(worst, std::fabs(symplectic::omega(x, y) + symplectic::omega(y, x)));
        worst = std::max(worst, std::fabs(symplectic::omega(x, x)));
    }
    return VerificationReport::make("omega_antisymmetry", cfg.samples, worst, 1e-12, seed);
}

VerificationReport flow_reversal_exact(const SuiteConfig& cfg, std::uint64_t seed,
                                       symplectic::FlowKind kind, std::string law) {
    symplectic::HamiltonianFlow flow(kind);
    auto r = symplectic::check_flow_reversal(flow, symplectic::FlowMode::exact, kFlowTimes,
                                             cfg.samples, 1e-12, seed);
    r.law_id = std::move(law);
    return r;
}

VerificationReport flow_reversal_leapfrog(const SuiteConfig& cfg, std::uint64_t seed,
                                          symplectic::FlowKind kind, std::string law) {
    symplectic::HamiltonianFlow flow(kind);
    auto r = symplectic::check_flow_reversal(flow, symplectic::FlowMode::leapfrog, {1.0, -1.0},
                                             std::min<std::size_t>(cfg.samples, 100), 1e-9, seed,
                                             1e-3);
    r.law_id = std::move(law);
    return r;
}

VerificationReport flow_group_law(const SuiteConfig& cfg, std::uint64_t seed) {
    symplectic::HamiltonianFlow flow(symplectic::FlowKind::harmonic_oscillator);
    core::Rng rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto sampler = symplectic::gaussian_phase_sampler(1);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        symplectic::PhasePoint m = sampler.draw(rng);
        double s = u(rng), t = u(rng);
        worst = std::max(worst, core::distance(flow.exact_at(s, flow.exact_at(t, m)),
                                               flow.exact_at(s + t, m)));
        worst = std::max(worst, core::distance(flow.exact_at(0.0, m), m));
    }
    return VerificationReport::make("flow_group_law", cfg.samples, worst, 1e-12, seed);
}

// ---- bernoulli suite -------------------------------------------------------

const std::vector<std::vector<std::string>> kSchemeSpecs = {
    {"1/2", "1/2"},
    {"1/2", "1/3", "1/6"},
    {"1/6", "1/6", "1/6", "1/6", "1/6", "1/6"},
};

bernoulli::BernoulliScheme scheme_from_spec(const std::vector<std::string>& probs) {
    std::vector<Rational> rs;
    for (const auto& p : probs) rs.push_back(exact::parse_rational(p));
    return bernoulli::BernoulliScheme(std::move(rs));
}

VerificationReport word_involution(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (const auto& spec : kSchemeSpecs) {
        auto scheme = scheme_from_spec(spec);
        parts.push_back(core::verify_involution(bernoulli::word_reversal(scheme.alphabet_size()),
                                                scheme.word_sampler(16), cfg.samples, seed,
                                                "eq_3_8_involution", 0.0));
    }
    return merge("eq_3_8_involution", parts, 0.0, seed);
}

VerificationReport word_reversal_relation(const SuiteConfig& cfg, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (const auto& spec : kSchemeSpecs)
        parts.push_back(bernoulli::check_reversal_relation(scheme_from_spec(spec), cfg.samples,
                                                           32, seed));
    return merge("eq_3_10", parts, 0.0, seed);
}

std::vector<bernoulli::Cylinder> sample_cylinders() {
    std::vector<bernoulli::Cylinder> cs;
    cs.push_back({});  // all of M
    cs.push_back({{{0, 0}}});
    cs.push_back({{{0, 1}, {3, 0}}});
    cs.push_back({{{-2, 1}, {-1, 0}, {4, 1}}});
    cs.push_back({{{-4, 0}, {0, 1}, {1, 1}, {2, 0}}});
    return cs;
}

VerificationReport shift_measure(const SuiteConfig&, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (const auto& spec : {kSchemeSpecs[0], kSchemeSpecs[1]})
        parts.push_back(
            bernoulli::check_shift_preserves_measure(scheme_from_spec(spec), sample_cylinders()));
    return merge("eq_3_7", parts, 0.0, seed);
}

VerificationReport reversal_measure(const SuiteConfig&, std::uint64_t seed) {
    std::vector<VerificationReport> parts;
    for (const auto& spec : {kSchemeSpecs[0], kSchemeSpecs[1]})
        parts.push_back(bernoulli::check_reversal_preserves_measure(scheme_from_spec(spec),
                                                                    sample_cylinders()));
    return merge("eq_3_7_reversal", parts, 0.0, seed);
}

// Brute-force fixed-set mass: enumerate all assignments of the paired
// indices and add up the product measures of the agreeing ones.
Rational enumerate_fixed_measure(const bernoulli::BernoulliScheme& scheme, int pairs,
                                 bernoulli::FixedPairing pairing) {
    const int slots = 2 * pairs;
    const int n = scheme.alphabet_size();
    std::vector<int> symbol(static_cast<std::size_t>(slots), 0);
    Rational total = 0;
    // slot layout: pair i occupies slots 2i (left index) and 2i+1 (right)
    std::function<void(int, Rational)> rec = [&](int slot, Rational weight) {
        if (slot == slots) {
            bool fixed = true;
            for (int i = 0; i < pairs; ++i)
                if (symbol[static_cast<std::size_t>(2 * i)] !=
                    symbol[static_cast<std::size_t>(2 * i + 1)])
                    fixed = false;
            if (fixed) total += weight;
            return;
        }
        for (int s = 0; s < n; ++s) {
            symbol[static_cast<std::size_t>(slot)] = s;
            rec(slot + 1, weight * scheme.prob(s));
        }
    };
    rec(0, Rational(1));
    (void)pairing;  // both pairings constrain the same number of slots
    return total;
}

VerificationReport fixed_set_law(const SuiteConfig&, std::uint64_t seed) {
    double worst = 0.0;
    std::size_t checks = 0;
    for (const auto& spec : {kSchemeSpecs[0], kSchemeSpecs[1]}) {
        auto scheme = scheme_from_spec(spec);
        for (int L = 1; L <= 4; ++L) {
            for (auto pairing :
                 {bernoulli::FixedPairing::adjacent, bernoulli::FixedPairing::symmetric}) {
                if (bernoulli::fixed_set_measure(scheme, L, pairing) !=
                    enumerate_fixed_measure(scheme, L, pairing))
                    worst = 1.0;
                ++checks;
            }
        }
    }
    // B(1/2,1/2): exact 2^-L, strictly decreasing out to L = 64
    auto fair = scheme_from_spec(kSchemeSpecs[0]);
    Rational prev = 1;
    for (int L = 1; L <= 64; ++L) {
        Rational m = bernoulli::fixed_set_measure(fair, L);
        if (m != Rational(exact::BigInt(1), exact::BigInt(1) << L)) worst = 1.0;
        if (!(m < prev)) worst = 1.0;
        prev = m;
        ++checks;
    }
    return VerificationReport::make("eq_3_9", checks, worst, 0.0, seed);
}

VerificationReport word_fixed_fraction(const SuiteConfig& cfg, std::uint64_t seed) {
    auto fair = scheme_from_spec(kSchemeSpecs[0]);
    double fraction = core::measure_fixed_fraction(bernoulli::word_reversal(2),
                                                   fair.word_sampler(16), cfg.samples, seed);
    // expected mass 2^-16 per word; a deterministic seeded run stays tiny
    return VerificationReport::make("a_r_2_words", cfg.samples, fraction, 1e-3, seed);
}

// ---- baker suite -------------------------------------------------------------

VerificationReport baker_measure(const SuiteConfig&, std::uint64_t seed) {
    auto r = baker::check_measure_preservation(8);
    r.seed = seed;
    return r;
}

VerificationReport baker_reversal_law(const SuiteConfig&, std::uint64_t seed) {
    auto r = baker::check_baker_reversal(20, 8);
    r.seed = seed;
    return r;
}

VerificationReport baker_involution(const SuiteConfig& cfg, std::uint64_t seed) {
    core::Sampler<exact::TorusPoint> sampler{
        "baker_torus", [](core::Rng& rng) {
            std::uniform_int_distribution<std::uint64_t> bits(0, (1u << 16) - 1);
            return exact::TorusPoint(exact::Dyadic(exact::BigInt(bits(rng)), 16),
                                     exact::Dyadic(exact::BigInt(bits(rng)), 16));
        }};
    return core::verify_involution(baker::baker_reversal_system(), sampler, cfg.samples, seed,
                                   "eq_5_2", 0.0);
}

VerificationReport baker_conjugacy(const SuiteConfig&, std::uint64_t seed) {
    auto r = baker::conjugacy_check(10, 11);
    r.seed = seed;
    return r;
}

VerificationReport baker_measure_correspondence(const SuiteConfig&, std::uint64_t seed) {
    auto r = baker::measure_correspondence_check(3, 10);
    r.seed = seed;
    return r;
}

VerificationReport theta_reversal_pointwise(const SuiteConfig&, std::uint64_t seed) {
    // theta_F o K = theta_{1-F} on every dyadic point of exponent <= 8
    double worst = 0.0;
    std::size_t checks = 0;
    const auto grid = exact::unit_dyadics(8);
    for (const auto& fset : {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{-2, 1}}) {
        baker::ThetaFunction f(fset);
        baker::ThetaFunction image = baker::reversal_on_theta(f);
        if (image.max_index() != 1 - f.min_index()) worst = 1.0;  // age map
        for (const auto& x : grid) {
            for (const auto& y : grid) {
                exact::TorusPoint m(x, y);
                if (baker::theta_eval(image, m) !=
                    baker::theta_eval(f, baker::torus_reversal(m)))
                    worst = 1.0;
                ++checks;
            }
        }
    }
    return VerificationReport::make("theta_reversal", checks, worst, 0.0, seed);
}

VerificationReport theta_koopman_conjugation(const SuiteConfig&, std::uint64_t seed) {
    baker::AgingOperator op(8, 3);
    auto r = op.check_reversal_conjugates_koopman();
    r.seed = seed;
    return r;
}

// ---- aging suite ---------------------------------------------------------------

VerificationReport aging_eigenvalues(const SuiteConfig&, std::uint64_t seed) {
    baker::AgingOperator op(8, 3);
    auto r = op.check_spectral_decomposition();
    r.seed = seed;
    return r;
}

VerificationReport aging_commutation(const SuiteConfig&, std::uint64_t seed) {
    baker::AgingOperator op(8, 3);
    std::vector<VerificationReport> parts;
    for (int t : {-3, -1, 1, 3}) parts.push_back(op.check_aging_commutation(t));
    return merge("eq_2_24", parts, 0.0, seed);
}

VerificationReport aging_imprimitivity(const SuiteConfig&, std::uint64_t seed) {
    baker::AgingOperator op(8, 3);
    std::vector<VerificationReport> parts;
    for (int s = -9; s <= 9; s += 3)
        for (int t = -4; t <= 4; t += 2) parts.push_back(op.check_imprimitivity(s, t));
    return merge("eq_2_22", parts, 0.0, seed);
}

VerificationReport theta_orthonormality(const SuiteConfig&, std::uint64_t seed) {
    // exact rational integrals over F, G in [-4, 4], |F|, |G| <= 2
    std::vector<baker::ThetaFunction> sets;
    for (int a = -4; a <= 4; ++a) {
        sets.push_back(baker::ThetaFunction({a}));
        for (int b = a + 1; b <= 4; ++b) sets.push_back(baker::ThetaFunction({a, b}));
    }
    double worst = 0.0;
    std::size_t checks = 0;
    for (const auto& f : sets) {
        for (const auto& g : sets) {
            Rational expected = (f == g) ? Rational(1) : Rational(0);
            if (baker::theta_inner_product(f, g) != expected) worst = 1.0;
            ++checks;
        }
    }
    return VerificationReport::make("theta_orthonormality", checks, worst, 0.0, seed);
}

// ---- densities suite --------------------------------------------------------------

VerificationReport classical_reversal_involution(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto q = densities::default_x_grid();
    auto p = densities::default_x_grid();
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        auto rho = densities::seeded_classical_density(q, p, rng);
        auto twice = densities::induced_reversal_classical(densities::induced_reversal_classical(rho));
        worst = std::max(worst, core::distance(twice, rho));
    }
    return VerificationReport::make("eq_2_11", 10, worst, 0.0, seed);
}

double split_violation_classical(const densities::ClassicalDensityGrid& rho) {
    auto [even, odd] = densities::even_odd_split(rho);
    double worst = 0.0;
    worst = std::max(worst,
                     (even.values() + odd.values() - rho.values()).cwiseAbs().maxCoeff());
    worst = std::max(worst, core::distance(densities::induced_reversal_classical(even), even));
    auto odd_flipped = densities::induced_reversal_classical(odd);
    worst = std::max(worst, (odd_flipped.values() + odd.values()).cwiseAbs().maxCoeff());
    auto [even2, odd2] = densities::even_odd_split(even);
    worst = std::max(worst, core::distance(even2, even));
    worst = std::max(worst, odd2.values().cwiseAbs().maxCoeff());
    return worst;
}

VerificationReport classical_projectors(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto q = densities::default_x_grid();
    auto p = densities::default_x_grid();
    double worst = 0.0;
    const int count = 50;
    for (int i = 0; i < count; ++i)
        worst = std::max(worst,
                         split_violation_classical(densities::seeded_classical_density(q, p, rng)));
    return VerificationReport::make("eq_2_12_13", count, worst, 0.0, seed);
}

VerificationReport classical_dynamics_reversal(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    const densities::GridSpec q{96, 0.125, 0.0};
    const densities::GridSpec p{96, 0.125, 0.0};
    double worst = 0.0;
    std::size_t checks = 0;
    for (auto kind : {symplectic::FlowKind::free_particle,
                      symplectic::FlowKind::harmonic_oscillator}) {
        symplectic::HamiltonianFlow flow(kind);
        auto rho = densities::seeded_classical_density(q, p, rng, 0.5, 0.9, 1.1);
        for (double t : {0.1, 0.4}) {
            auto lhs = densities::induced_reversal_classical(densities::induced_dynamics_classical(
                densities::induced_reversal_classical(rho), flow, t));
            auto rhs = densities::induced_dynamics_classical(rho, flow, -t);
            worst = std::max(worst, core::distance(lhs, rhs));
            ++checks;
        }
    }
    return VerificationReport::make("eq_2_14", checks, worst, 1e-6, seed);
}

VerificationReport classical_dynamics_mass(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    const densities::GridSpec q{96, 0.125, 0.0};
    const densities::GridSpec p{96, 0.125, 0.0};
    symplectic::HamiltonianFlow flow(symplectic::FlowKind::harmonic_oscillator);
    double worst = 0.0;
    auto rho = densities::seeded_classical_density(q, p, rng, 0.5, 0.9, 1.1);
    for (double t : {0.25, 2.0 * std::numbers::pi}) {
        auto moved = densities::induced_dynamics_classical(rho, flow, t);
        worst = std::max(worst, std::fabs(moved.total_mass() - rho.total_mass()));
    }
    auto returned =
        densities::induced_dynamics_classical(rho, flow, 2.0 * std::numbers::pi);
    worst = std::max(worst, core::distance(returned, rho));
    return VerificationReport::make("eq_2_14_mass", 3, worst, 1e-6, seed);
}

VerificationReport conjugation_translations(const SuiteConfig& cfg, std::uint64_t seed) {
    densities::ConjugationSpace space(3);
    densities::ConjugationVector a = space.zero();
    a.imag_part[0] = Rational(1);
    a.imag_part[2] = Rational(-2, 3);
    std::vector<Rational> ts = {Rational(1), Rational(-1), Rational(7, 3), Rational(0)};
    return densities::conjugation_translation_check(3, a, cfg.samples, ts, seed);
}

VerificationReport quantum_reversal(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto x = densities::default_x_grid();
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        auto rho = densities::seeded_density_matrix(x, rng);
        auto rev = densities::density_matrix_reversal(rho);
        auto twice = densities::density_matrix_reversal(rev);
        worst = std::max(worst, (twice.kernel() - rho.kernel()).cwiseAbs().maxCoeff());
        // conjugation preserves the (real) spectrum
        Eigen::VectorXd before = rho.eigenvalues();
        Eigen::VectorXd after = rev.eigenvalues();
        worst = std::max(worst, (before - after).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::fabs(rev.trace() - rho.trace()));
    }
    return VerificationReport::make("eq_2_18", 10, worst, 1e-12, seed);
}

double split_violation_quantum(const Eigen::MatrixXcd& kernel) {
    auto [re, im] = densities::real_imag_split(kernel);
    double worst = (re + im - kernel).cwiseAbs().maxCoeff();
    worst = std::max(worst, (re.conjugate() - re).cwiseAbs().maxCoeff());
    worst = std::max(worst, (im.conjugate() + im).cwiseAbs().maxCoeff());
    auto [re2, im2] = densities::real_imag_split(re);
    worst = std::max(worst, (re2 - re).cwiseAbs().maxCoeff());
    worst = std::max(worst, im2.cwiseAbs().maxCoeff());
    return worst;
}

VerificationReport quantum_projectors(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto x = densities::default_x_grid();
    double worst = 0.0;
    const int count = 50;
    for (int i = 0; i < count; ++i)
        worst = std::max(worst, split_violation_quantum(
                                    densities::seeded_density_matrix(x, rng).kernel()));
    return VerificationReport::make("eq_2_19_20", count, worst, 0.0, seed);
}

VerificationReport wigner_gaussian(const SuiteConfig&, std::uint64_t seed) {
    auto x = densities::default_x_grid();
    auto psi = densities::gaussian_ground_state(x);
    auto rho = densities::DensityMatrix::from_ensemble({1.0}, {psi});
    auto w = densities::wigner_transform(rho);
    double worst = 0.0;
    for (int i = 0; i < x.count; ++i) {
        for (int j = 0; j < w.pgrid().count; ++j) {
            double qv = x.coord(i), pv = w.pgrid().coord(j);
            double expected = std::exp(-qv * qv - pv * pv) / std::numbers::pi;
            worst = std::max(worst, std::fabs(w.value(i, j) - expected));
        }
    }
    return VerificationReport::make("eq_2_21a_gaussian", static_cast<std::size_t>(x.count) *
                                                             static_cast<std::size_t>(x.count),
                                    worst, 1e-6, seed);
}

VerificationReport wigner_normalization(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto x = densities::default_x_grid();
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        auto rho = densities::seeded_density_matrix(x, rng);
        auto w = densities::wigner_transform(rho);
        // marginal over p reproduces the kernel diagonal
        for (int iq = 0; iq < x.count; ++iq) {
            double marginal = w.values().row(iq).sum() * w.pgrid().spacing;
            worst = std::max(worst, std::fabs(marginal - rho.kernel()(iq, iq).real()));
        }
        worst = std::max(worst, std::fabs(w.total_mass() - rho.trace()));
    }
    return VerificationReport::make("eq_2_21a_marginal", 5, worst, 1e-6, seed);
}

VerificationReport wigner_morphism(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto x = densities::default_x_grid();
    std::vector<VerificationReport> parts;
    for (int i = 0; i < 20; ++i)
        parts.push_back(
            densities::check_wigner_morphism(densities::seeded_density_matrix(x, rng), 1e-12));
    return merge("eq_2_21c", parts, 1e-12, seed);
}

VerificationReport wavefunction_conjugation(const SuiteConfig&, std::uint64_t seed) {
    core::Rng rng(seed);
    auto x = densities::default_x_grid();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto psi = densities::seeded_wavefunction(x, rng);
        auto twice = densities::wavefunction_reversal(densities::wavefunction_reversal(psi));
        worst = std::max(worst, (twice.values() - psi.values()).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::fabs(psi.norm_squared() -
                                          densities::wavefunction_reversal(psi).norm_squared()));
    }
    return VerificationReport::make("eq_0_3", 20, worst, 0.0, seed);
}

// ---- registry ------------------------------------------------------------------

std::vector<Check> build_registry() {
    std::vector<Check> checks;
    auto add = [&](std::string suite, std::string law,
                   std::function<VerificationReport(const SuiteConfig&, std::uint64_t)> fn) {
        checks.push_back({std::move(suite), std::move(law), std::move(fn)});
    };

    add("involution", "eq_2_1", real_line_involution);
    add("involution", "eq_1_0_real_line", real_line_orientation);
    add("involution", "eq_2_2", real_line_translations);
    add("involution", "eq_2_3", minkowski_involution);
    add("involution", "eq_1_0_minkowski", minkowski_orientation);
    add("involution", "eq_2_4", minkowski_translations);
    add("involution", "eq_1_6_identity", identity_morphism);
    add("involution", "a_r_2_real_line", line_fixed_fraction);

    add("symplectic", "eq_2_5", phase_involution);
    add("symplectic", "eq_2_10", symplectic_sr);
    add("symplectic", "eq_1_1", symplectic_cr);
    add("symplectic", "eq_1_3", symplectic_isometry);
    add("symplectic", "eq_1_4", symplectic_compat);
    add("symplectic", "omega_antisymmetry", omega_antisymmetry);
    add("symplectic", "eq_1_5_harmonic", [](const SuiteConfig& c, std::uint64_t s) {
        return flow_reversal_exact(c, s, symplectic::FlowKind::harmonic_oscillator,
                                   "eq_1_5_harmonic");
    });
    add("symplectic", "eq_1_5_free", [](const SuiteConfig& c, std::uint64_t s) {
        return flow_reversal_exact(c, s, symplectic::FlowKind::free_particle, "eq_1_5_free");
    });
    add("symplectic", "eq_1_5_harmonic_leapfrog", [](const SuiteConfig& c, std::uint64_t s) {
        return flow_reversal_leapfrog(c, s, symplectic::FlowKind::harmonic_oscillator,
                                      "eq_1_5_harmonic_leapfrog");
    });
    add("symplectic", "eq_1_5_free_leapfrog", [](const SuiteConfig& c, std::uint64_t s) {
        return flow_reversal_leapfrog(c, s, symplectic::FlowKind::free_particle,
                                      "eq_1_5_free_leapfrog");
    });
    add("symplectic", "flow_group_law", flow_group_law);

    add("bernoulli", "eq_3_8_involution", word_involution);
    add("bernoulli", "eq_3_10", word_reversal_relation);
    add("bernoulli", "eq_3_7", shift_measure);
    add("bernoulli", "eq_3_7_reversal", reversal_measure);
    add("bernoulli", "eq_3_9", fixed_set_law);
    add("bernoulli", "a_r_2_words", word_fixed_fraction);

    add("baker", "eq_5_1", baker_measure);
    add("baker", "eq_5_2", baker_involution);
    add("baker", "eq_5_3", baker_reversal_law);
    add("baker", "eq_5_4", baker_conjugacy);
    add("baker", "eq_1_7", baker_measure_correspondence);
    add("baker", "theta_reversal", theta_reversal_pointwise);
    add("baker", "eq_5_3_theta", theta_koopman_conjugation);

    add("aging", "eq_5_8", aging_eigenvalues);
    add("aging", "eq_2_24", aging_commutation);
    add("aging", "eq_2_22", aging_imprimitivity);
    add("aging", "theta_orthonormality", theta_orthonormality);

    add("densities", "eq_2_11", classical_reversal_involution);
    add("densities", "eq_2_12_13", classical_projectors);
    add("densities", "eq_2_14", classical_dynamics_reversal);
    add("densities", "eq_2_14_mass", classical_dynamics_mass);
    add("densities", "eq_2_17", conjugation_translations);
    add("densities", "eq_0_3", wavefunction_conjugation);
    add("densities", "eq_2_18", quantum_reversal);
    add("densities", "eq_2_19_20", quantum_projectors);
    add("densities", "eq_2_21a_gaussian", wigner_gaussian);
    add("densities", "eq_2_21a_marginal", wigner_normalization);
    add("densities", "eq_2_21c", wigner_morphism);

    return checks;
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks = build_registry();
    return checks;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& c : registry())
        if (std::find(names.begin(), names.end(), c.suite) == names.end())
            names.push_back(c.suite);
    names.push_back("all");
    return names;
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json());
    j["duration_ms"] = duration_ms;
    j["passed"] = passed;
    return j;
}

RunReport run_suite(const SuiteConfig& cfg) {
    if (cfg.samples == 0) throw std::invalid_argument("samples must be >= 1");
    for (const auto& [law, tol] : cfg.tolerance_overrides)
        if (tol < 0.0) throw std::invalid_argument("tolerance for " + law + " must be >= 0");
    auto names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw std::invalid_argument("unknown suite: " + cfg.suite);

    const auto start = std::chrono::steady_clock::now();
    RunReport run;
    run.suite = cfg.suite;
    run.seed = cfg.seed;
    for (const auto& check : registry()) {
        if (cfg.suite != "all" && cfg.suite != check.suite) continue;
        std::uint64_t derived = cfg.seed ^ fnv1a(check.law_id);
        VerificationReport r = check.run(cfg, derived);
        r.seed = derived;
        auto it = cfg.tolerance_overrides.find(r.law_id);
        if (it != cfg.tolerance_overrides.end()) {
            r.tolerance = it->second;
            r.passed = r.max_violation <= r.tolerance;
        }
        run.reports.push_back(std::move(r));
    }
    std::sort(run.reports.begin(), run.reports.end(),
              [](const VerificationReport& a, const VerificationReport& b) {
                  return a.law_id < b.law_id;
              });
    run.passed = std::all_of(run.reports.begin(), run.reports.end(),
                             [](const VerificationReport& r) { return r.passed; });
    run.duration_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return run;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string frame_stem(const FrameRequest& req) {
    std::ostringstream name;
    if (req.kind == "partition_evolution") {
        name << "partition_t" << req.t;
    } else {
        name << "theta_F";
        for (std::size_t i = 0; i < req.theta_set.size(); ++i)
            name << (i ? "_" : "") << req.theta_set[i];
    }
    name << "_k" << req.resolution_exponent;
    return name.str();
}

}  // namespace

std::vector<std::filesystem::path> export_frames(const FrameRequest& req) {
    if (req.resolution_exponent < 0 || req.resolution_exponent > 10)
        throw std::invalid_argument("resolution exponent must be in [0, 10]");
    std::vector<std::vector<int>> raster;
    if (req.kind == "partition_evolution") {
        raster = baker::rasterize_partition(req.t, req.resolution_exponent);
    } else if (req.kind == "theta") {
        raster = baker::rasterize_theta(baker::ThetaFunction(req.theta_set),
                                        req.resolution_exponent);
    } else {
        throw std::invalid_argument("unknown frame kind: " + req.kind);
    }

    std::error_code ec;
    std::filesystem::create_directories(req.out_dir, ec);
    if (ec) throw IoError("cannot create " + req.out_dir.string());

    const int n = 1 << req.resolution_exponent;
    const std::string stem = frame_stem(req);

    // PGM P2, +1 -> 255 (white), -1 -> 0; raster row 0 is y = 0, which PGM
    // places at the bottom, so rows are written top-down.
    std::ostringstream pgm;
    pgm << "P2\n" << n << " " << n << "\n255\n";
    for (int iy = n - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < n; ++ix)
            pgm << (raster[static_cast<std::size_t>(iy)][static_cast<std::size_t>(ix)] > 0 ? 255
                                                                                           : 0)
                << (ix + 1 < n ? ' ' : '\n');
    }
    std::filesystem::path pgm_path = req.out_dir / (stem + ".pgm");
    write_text_file(pgm_path, pgm.str());

    std::ostringstream csv;
    csv << "x,y,value\n";
    const double h = 1.0 / n;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            csv << ix * h << ',' << iy * h << ','
                << raster[static_cast<std::size_t>(iy)][static_cast<std::size_t>(ix)] << '\n';
    std::filesystem::path csv_path = req.out_dir / (stem + ".csv");
    write_text_file(csv_path, csv.str());

    return {pgm_path, csv_path};
}

}  // namespace revstruct::suites
