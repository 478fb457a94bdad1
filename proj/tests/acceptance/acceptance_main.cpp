// Acceptance suite: runs every top-level property at its pinned tolerance
// and prints one pass/fail line per criterion. Exits nonzero on any failure.
//
// Usage: acceptance <path-to-revstruct-cli>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "revstruct/baker.hpp"
#include "revstruct/bernoulli.hpp"
#include "revstruct/densities.hpp"
#include "revstruct/suites.hpp"
#include "revstruct/symplectic.hpp"

using namespace revstruct;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. K S^t K = S^{-t} exactly: every dyadic point of exponent <= 8, |t| <= 20.
void criterion_1() {
    auto start = Clock::now();
    auto r = baker::check_baker_reversal(20, 8);
    double elapsed = seconds_since(start);
    std::ostringstream what;
    what << "Baker reversal law, exponent<=8, |t|<=20: " << r.samples_tested
         << " checks, max_violation=" << r.max_violation << ", " << elapsed << "s";
    report(1, r.max_violation == 0.0 && elapsed < 10.0, what.str());
}

// 2. K S K = S^{-1} exactly over 1e4 seeded words per alphabet, window 32.
void criterion_2() {
    bool ok = true;
    std::size_t words = 0;
    for (const auto& probs : {std::vector<std::string>{"1/2", "1/2"},
                              std::vector<std::string>{"1/2", "1/3", "1/6"},
                              std::vector<std::string>{"1/6", "1/6", "1/6", "1/6", "1/6", "1/6"}}) {
        std::vector<exact::Rational> rs;
        for (const auto& p : probs) rs.push_back(exact::parse_rational(p));
        bernoulli::BernoulliScheme scheme(std::move(rs));
        auto r = bernoulli::check_reversal_relation(scheme, 10000, 32, 271828);
        words += r.samples_tested;
        if (r.max_violation != 0.0) ok = false;
    }
    std::ostringstream what;
    what << "Bernoulli reversal law over " << words << " words, n in {2,3,6}, L=32";
    report(2, ok, what.str());
}

// 3. Conjugacy intertwines dynamics and reversals on every dyadic point of
//    exponent <= 10; cylinder measures match rectangle areas, rank <= 3.
void criterion_3() {
    auto conj = baker::conjugacy_check(10, 11);
    auto meas = baker::measure_correspondence_check(3, 11);
    std::ostringstream what;
    what << "conjugacy (" << conj.samples_tested << " checks) and measures ("
         << meas.samples_tested << " cylinders) exact";
    report(3, conj.max_violation == 0.0 && meas.max_violation == 0.0, what.str());
}

// 4. fixed_set_measure(B(1/2,1/2), L) = 2^-L, matches enumeration for L <= 4,
//    strictly decreasing for L <= 64.
void criterion_4() {
    bernoulli::BernoulliScheme fair({exact::Rational(1, 2), exact::Rational(1, 2)});
    bool ok = true;
    // enumeration oracle over the 2L constrained indices
    for (int L = 1; L <= 4; ++L) {
        const int slots = 2 * L;
        long agree = 0;
        for (long mask = 0; mask < (1L << slots); ++mask) {
            bool fixed = true;
            for (int i = 0; i < L; ++i)
                if (((mask >> (2 * i)) & 1) != ((mask >> (2 * i + 1)) & 1)) fixed = false;
            if (fixed) ++agree;
        }
        exact::Rational enumerated(exact::BigInt(agree), exact::BigInt(1) << slots);
        if (bernoulli::fixed_set_measure(fair, L) != enumerated) ok = false;
    }
    exact::Rational prev = 1;
    for (int L = 1; L <= 64; ++L) {
        exact::Rational m = bernoulli::fixed_set_measure(fair, L);
        if (m != exact::Rational(exact::BigInt(1), exact::BigInt(1) << L)) ok = false;
        if (!(m < prev)) ok = false;
        prev = m;
    }
    report(4, ok, "fixed-set measure 2^-L: enumeration match (L<=4), decreasing to L=64");
}

// 5. K*omega = -omega, K_*J = -JK_*, K*g = g, each <= 1e-12 over 1e3 pairs
//    at n in {1, 2, 5}.
void criterion_5() {
    bool ok = true;
    double worst = 0.0;
    for (int n : {1, 2, 5}) {
        for (auto r : {symplectic::check_sr(n, 1000, 1e-12, 314159),
                       symplectic::check_cr(n, 1000, 1e-12, 314159),
                       symplectic::check_isometry(n, 1000, 1e-12, 314159)}) {
            worst = std::max(worst, r.max_violation);
            if (!r.passed) ok = false;
        }
    }
    std::ostringstream what;
    what << "symplectic theorem suite at n in {1,2,5}: max_violation=" << worst << " <= 1e-12";
    report(5, ok, what.str());
}

// 6. Eq (1.5) for the harmonic oscillator and free particle: closed form
//    <= 1e-12 at t in {+-0.1, +-1, +-pi}; leapfrog dt=1e-3, 1000 steps <= 1e-9.
void criterion_6() {
    const std::vector<double> times = {0.1, -0.1, 1.0, -1.0, std::numbers::pi,
                                       -std::numbers::pi};
    bool ok = true;
    double worst_exact = 0.0, worst_leap = 0.0;
    for (auto kind :
         {symplectic::FlowKind::harmonic_oscillator, symplectic::FlowKind::free_particle}) {
        symplectic::HamiltonianFlow flow(kind);
        auto exact_r = symplectic::check_flow_reversal(flow, symplectic::FlowMode::exact, times,
                                                       1000, 1e-12, 662607);
        auto leap_r = symplectic::check_flow_reversal(flow, symplectic::FlowMode::leapfrog,
                                                      {1.0, -1.0}, 100, 1e-9, 662607, 1e-3);
        worst_exact = std::max(worst_exact, exact_r.max_violation);
        worst_leap = std::max(worst_leap, leap_r.max_violation);
        if (!exact_r.passed || !leap_r.passed) ok = false;
    }
    std::ostringstream what;
    what << "Hamiltonian time reversal: exact " << worst_exact << " <= 1e-12, leapfrog "
         << worst_leap << " <= 1e-9";
    report(6, ok, what.str());
}

// 7. Wigner morphism <= 1e-12 on 20 seeded PSD matrices; Gaussian benchmark
//    <= 1e-6; runtime < 5 s.
void criterion_7() {
    auto start = Clock::now();
    auto x = densities::default_x_grid();
    core::Rng rng(9109);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto rho = densities::seeded_density_matrix(x, rng);
        auto r = densities::check_wigner_morphism(rho, 1e-12);
        worst = std::max(worst, r.max_violation);
        if (!r.passed) ok = false;
    }
    auto gauss = densities::DensityMatrix::from_ensemble(
        {1.0}, {densities::gaussian_ground_state(x)});
    auto w = densities::wigner_transform(gauss);
    double bench = 0.0;
    for (int i = 0; i < x.count; ++i)
        for (int j = 0; j < w.pgrid().count; ++j) {
            double expected =
                std::exp(-x.coord(i) * x.coord(i) - w.pgrid().coord(j) * w.pgrid().coord(j)) /
                std::numbers::pi;
            bench = std::max(bench, std::fabs(w.value(i, j) - expected));
        }
    double elapsed = seconds_since(start);
    if (bench > 1e-6 || elapsed >= 5.0) ok = false;
    std::ostringstream what;
    what << "Wigner morphism max_violation=" << worst << " <= 1e-12, Gaussian benchmark "
         << bench << " <= 1e-6, " << elapsed << "s";
    report(7, ok, what.str());
}

// 8. Aging operator laws exact on every theta_F with F in [-8,8], |F| <= 3;
//    orthonormality by exact rational integration on [-4,4], |F| <= 2.
void criterion_8() {
    baker::AgingOperator op(8, 3);
    bool ok = true;
    if (!op.check_spectral_decomposition().passed) ok = false;
    for (const auto& f : op.basis())
        if (baker::aging_apply(op, f).first != f.max_index()) ok = false;
    if (!op.check_aging_commutation(1).passed) ok = false;
    for (int s = -9; s <= 9; ++s)
        for (int t = -4; t <= 4; ++t)
            if (!op.check_imprimitivity(s, t).passed) ok = false;

    std::vector<baker::ThetaFunction> sets;
    for (int a = -4; a <= 4; ++a) {
        sets.push_back(baker::ThetaFunction({a}));
        for (int b = a + 1; b <= 4; ++b) sets.push_back(baker::ThetaFunction({a, b}));
    }
    for (const auto& f : sets)
        for (const auto& g : sets) {
            exact::Rational expected = (f == g) ? 1 : 0;
            if (baker::theta_inner_product(f, g) != expected) ok = false;
        }
    std::ostringstream what;
    what << "aging operator laws on " << op.basis().size()
         << " basis elements; orthonormality over " << sets.size() << "x" << sets.size()
         << " exact integrals";
    report(8, ok, what.str());
}

// 9. Projector splits: exact idempotent decompositions with K-eigenvalues
//    +-1 on 50 seeded classical and 50 seeded quantum densities.
void criterion_9() {
    bool ok = true;
    core::Rng rng(5050);
    auto q = densities::default_x_grid();
    auto p = densities::default_x_grid();
    for (int i = 0; i < 50; ++i) {
        auto rho = densities::seeded_classical_density(q, p, rng);
        auto [even, odd] = densities::even_odd_split(rho);
        if ((even.values() + odd.values() - rho.values()).cwiseAbs().maxCoeff() != 0.0) ok = false;
        if (core::distance(densities::induced_reversal_classical(even), even) != 0.0) ok = false;
        auto odd_flip = densities::induced_reversal_classical(odd);
        if ((odd_flip.values() + odd.values()).cwiseAbs().maxCoeff() != 0.0) ok = false;
        auto [even2, odd2] = densities::even_odd_split(even);
        if (core::distance(even2, even) != 0.0 || odd2.values().cwiseAbs().maxCoeff() != 0.0)
            ok = false;
    }
    auto x = densities::default_x_grid();
    for (int i = 0; i < 50; ++i) {
        auto kernel = densities::seeded_density_matrix(x, rng).kernel();
        auto [re, im] = densities::real_imag_split(kernel);
        if ((re + im - kernel).cwiseAbs().maxCoeff() != 0.0) ok = false;
        if ((re.conjugate() - re).cwiseAbs().maxCoeff() != 0.0) ok = false;
        if ((im.conjugate() + im).cwiseAbs().maxCoeff() != 0.0) ok = false;
        auto [re2, im2] = densities::real_imag_split(re);
        if ((re2 - re).cwiseAbs().maxCoeff() != 0.0 || im2.cwiseAbs().maxCoeff() != 0.0)
            ok = false;
    }
    report(9, ok, "projector algebra exact on 50 classical + 50 quantum seeded densities");
}

// 10. The CLI's full run: exit 0, under 60 s, byte-identical body on rerun.
void criterion_10(const char* cli_path) {
    namespace fs = std::filesystem;
    if (!cli_path) {
        report(10, false, "no CLI path supplied");
        return;
    }
    fs::path dir = fs::temp_directory_path() / "revstruct_acceptance";
    fs::create_directories(dir);
    fs::path out1 = dir / "run1.json";
    fs::path out2 = dir / "run2.json";
    std::string base = std::string("\"") + cli_path +
                       "\" --suite all --seed 97 --samples 1000 2>/dev/null";
    auto start = Clock::now();
    int rc1 = std::system((base + " --out \"" + out1.string() + "\"").c_str());
    double elapsed = seconds_since(start);
    int rc2 = std::system((base + " --out \"" + out2.string() + "\"").c_str());

    bool ok = rc1 != -1 && rc2 != -1 && WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0 &&
              elapsed < 60.0;
    std::string detail;
    if (ok) {
        std::ifstream f1(out1), f2(out2);
        nlohmann::ordered_json j1, j2;
        f1 >> j1;
        f2 >> j2;
        j1.erase("duration_ms");
        j2.erase("duration_ms");
        if (j1.dump() != j2.dump()) {
            ok = false;
            detail = "; rerun bodies differ";
        }
    }
    std::ostringstream what;
    what << "run_suite --suite all: exit " << (rc1 == -1 ? -1 : WEXITSTATUS(rc1)) << ", "
         << elapsed << "s, rerun byte-identical" << detail;
    report(10, ok, what.str());
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(argc > 1 ? argv[1] : nullptr);

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
}
