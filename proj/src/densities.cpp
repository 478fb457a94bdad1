#include "revstruct/densities.hpp"

#include <cmath>
#include <numbers>

namespace revstruct::densities {

namespace {
constexpr double kQuantum = 1099511627776.0;  // 2^40

double quantize(double v) { return std::nearbyint(v * kQuantum) / kQuantum; }

// cos/sin with forced even/odd symmetry so that negating the angle negates
// the phase bitwise, independent of libm internals.
Complex unit_phase(double angle) {
    double c = std::cos(std::fabs(angle));
    double s = std::sin(std::fabs(angle));
    if (angle < 0.0) s = -s;
    return Complex(c, s);
}
}  // namespace

double GridSpec::coord(int i) const {
    if (i < 0 || i >= count) throw std::out_of_range("grid index");
    double mag;
    if (count % 2 == 0) {
        int k = i - count / 2;
        mag = k >= 0 ? (k + 0.5) * spacing : -((-k - 1) + 0.5) * spacing;
    } else {
        int k = i - (count - 1) / 2;
        mag = k >= 0 ? k * spacing : -(-k * spacing);
    }
    return mag + offset;
}

GridSpec default_x_grid() { return GridSpec{64, 0.1875, 0.0}; }

GridSpec conjugate_p_grid(const GridSpec& x) {
    return GridSpec{x.count, std::numbers::pi / (x.count * x.spacing), 0.0};
}

ClassicalDensityGrid::ClassicalDensityGrid(GridSpec q, GridSpec p, Eigen::MatrixXd v,
                                           bool validate)
    : qgrid_(q), pgrid_(p), values_(std::move(v)) {
    if (values_.rows() != qgrid_.count || values_.cols() != pgrid_.count)
        throw std::invalid_argument("value matrix does not match the grid shape");
    if (validate) {
        if ((values_.array() < 0.0).any())
            throw std::invalid_argument("density values must be nonnegative");
        if (std::fabs(total_mass() - 1.0) > 1e-9)
            throw std::invalid_argument("density is not normalized");
    }
}

ClassicalDensityGrid ClassicalDensityGrid::density(GridSpec q, GridSpec p,
                                                   Eigen::MatrixXd values) {
    return ClassicalDensityGrid(q, p, std::move(values), true);
}

ClassicalDensityGrid ClassicalDensityGrid::signed_grid(GridSpec q, GridSpec p,
                                                       Eigen::MatrixXd values) {
    return ClassicalDensityGrid(q, p, std::move(values), false);
}

ClassicalDensityGrid induced_reversal_classical(const ClassicalDensityGrid& rho) {
    if (!rho.pgrid().symmetric())
        throw std::invalid_argument("asymmetric grid: p-reflection is not a lattice map");
    const int nq = rho.qgrid().count, np = rho.pgrid().count;
    Eigen::MatrixXd out(nq, np);
    for (int iq = 0; iq < nq; ++iq)
        for (int ip = 0; ip < np; ++ip) out(iq, ip) = rho.value(iq, rho.pgrid().mirror(ip));
    return ClassicalDensityGrid::signed_grid(rho.qgrid(), rho.pgrid(), std::move(out));
}

std::pair<ClassicalDensityGrid, ClassicalDensityGrid> even_odd_split(
    const ClassicalDensityGrid& rho) {
    if (!rho.pgrid().symmetric())
        throw std::invalid_argument("asymmetric grid: p-reflection is not a lattice map");
    const int nq = rho.qgrid().count, np = rho.pgrid().count;
    Eigen::MatrixXd even(nq, np), odd(nq, np);
    for (int iq = 0; iq < nq; ++iq) {
        for (int ip = 0; ip < np; ++ip) {
            double a = rho.value(iq, ip);
            double b = rho.value(iq, rho.pgrid().mirror(ip));
            even(iq, ip) = (a + b) / 2.0;
            odd(iq, ip) = (a - b) / 2.0;
        }
    }
    return {ClassicalDensityGrid::signed_grid(rho.qgrid(), rho.pgrid(), std::move(even)),
            ClassicalDensityGrid::signed_grid(rho.qgrid(), rho.pgrid(), std::move(odd))};
}

ClassicalDensityGrid induced_dynamics_classical(const ClassicalDensityGrid& rho,
                                                const symplectic::HamiltonianFlow& flow,
                                                double t) {
    const GridSpec& qg = rho.qgrid();
    const GridSpec& pg = rho.pgrid();
    const int nq = qg.count, np = pg.count;

    // Edge-supported inputs cannot be pulled back through any map that
    // leaves the box: their off-grid values are unknowable.
    double peak = rho.values().cwiseAbs().maxCoeff();
    double edge = 0.0;
    for (int iq = 0; iq < nq; ++iq)
        edge = std::max({edge, std::fabs(rho.value(iq, 0)), std::fabs(rho.value(iq, np - 1))});
    for (int ip = 0; ip < np; ++ip)
        edge = std::max({edge, std::fabs(rho.value(0, ip)), std::fabs(rho.value(nq - 1, ip))});
    const bool edge_supported = peak > 0.0 && edge > 1e-10 * peak;

    const double q0 = qg.coord(0), p0 = pg.coord(0);
    Eigen::MatrixXd out(nq, np);
    bool escaped = false;
    for (int iq = 0; iq < nq; ++iq) {
        for (int ip = 0; ip < np; ++ip) {
            symplectic::PhasePoint m(Eigen::VectorXd::Constant(1, qg.coord(iq)),
                                     Eigen::VectorXd::Constant(1, pg.coord(ip)));
            symplectic::PhasePoint pre = flow.exact_at(-t, m);
            double fq = (pre.q[0] - q0) / qg.spacing;
            double fp = (pre.p[0] - p0) / pg.spacing;
            if (fq < 0.0 || fq > nq - 1 || fp < 0.0 || fp > np - 1) {
                escaped = true;
                out(iq, ip) = 0.0;
                continue;
            }
            int i0 = std::min(static_cast<int>(std::floor(fq)), nq - 2);
            int j0 = std::min(static_cast<int>(std::floor(fp)), np - 2);
            double wq = fq - i0, wp = fp - j0;
            out(iq, ip) = (1 - wq) * (1 - wp) * rho.value(i0, j0) +
                          wq * (1 - wp) * rho.value(i0 + 1, j0) +
                          (1 - wq) * wp * rho.value(i0, j0 + 1) +
                          wq * wp * rho.value(i0 + 1, j0 + 1);
        }
    }
    if (escaped && edge_supported) throw std::runtime_error("support escape");
    ClassicalDensityGrid result = ClassicalDensityGrid::signed_grid(qg, pg, std::move(out));
    if (std::fabs(result.total_mass() - rho.total_mass()) > 1e-4)
        throw std::runtime_error("support escape");
    return result;
}

WaveFunctionGrid::WaveFunctionGrid(GridSpec x, Eigen::VectorXcd psi)
    : xgrid_(x), psi_(std::move(psi)) {
    if (psi_.size() != xgrid_.count)
        throw std::invalid_argument("wave function does not match the grid");
    if (std::fabs(norm_squared() - 1.0) > 1e-9)
        throw std::invalid_argument("wave function is not normalized");
}

double WaveFunctionGrid::norm_squared() const {
    return psi_.squaredNorm() * xgrid_.spacing;
}

WaveFunctionGrid wavefunction_reversal(const WaveFunctionGrid& psi) {
    return WaveFunctionGrid(psi.xgrid(), psi.values().conjugate());
}

DensityMatrix::DensityMatrix(GridSpec x, Eigen::MatrixXcd kernel)
    : xgrid_(x), kernel_(std::move(kernel)) {
    if (kernel_.rows() != xgrid_.count || kernel_.cols() != xgrid_.count)
        throw std::invalid_argument("kernel does not match the grid");
    double herm = (kernel_ - kernel_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) throw std::invalid_argument("kernel is not Hermitian");
    if (std::fabs(trace() - 1.0) > 1e-9) throw std::invalid_argument("kernel trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kernel_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("kernel is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_ensemble(const std::vector<double>& weights,
                                           const std::vector<WaveFunctionGrid>& states) {
    if (weights.empty() || weights.size() != states.size())
        throw std::invalid_argument("ensemble weights and states must match");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("ensemble weights must be nonnegative");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw std::invalid_argument("ensemble weights must sum to 1");
    const GridSpec x = states.front().xgrid();
    const int n = x.count;
    Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (!(states[j].xgrid() == x))
            throw std::invalid_argument("ensemble states live on different grids");
        // Eq (2.21b): rho(x, x') = sum_j rho_j conj(psi_j(x)) psi_j(x').
        kernel += weights[j] * (states[j].values().conjugate() *
                                states[j].values().transpose());
    }
    // Enforce bitwise Hermitian symmetry (the formula is Hermitian up to
    // floating-point evaluation order).
    for (int r = 0; r < n; ++r) {
        kernel(r, r) = Complex(kernel(r, r).real(), 0.0);
        for (int c = r + 1; c < n; ++c) kernel(c, r) = std::conj(kernel(r, c));
    }
    return DensityMatrix(x, std::move(kernel));
}

double DensityMatrix::trace() const { return kernel_.trace().real() * xgrid_.spacing; }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kernel_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

DensityMatrix density_matrix_reversal(const DensityMatrix& rho) {
    return DensityMatrix(rho.xgrid(), rho.kernel().conjugate());
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> real_imag_split(const Eigen::MatrixXcd& kernel) {
    Eigen::MatrixXcd real_part(kernel.rows(), kernel.cols());
    Eigen::MatrixXcd imag_part(kernel.rows(), kernel.cols());
    for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
        for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
            real_part(r, c) = Complex(kernel(r, c).real(), 0.0);
            imag_part(r, c) = Complex(0.0, kernel(r, c).imag());
        }
    }
    return {std::move(real_part), std::move(imag_part)};
}

ClassicalDensityGrid wigner_transform_kernel(const GridSpec& x, const Eigen::MatrixXcd& kernel) {
    if (!x.symmetric()) throw std::invalid_argument("asymmetric grid");
    if (kernel.rows() != x.count || kernel.cols() != x.count)
        throw std::invalid_argument("kernel does not match the grid");
    const GridSpec pg = conjugate_p_grid(x);
    const int n = x.count;
    Eigen::MatrixXd out(n, n);
    double residue = 0.0;
    for (int i = 0; i < n; ++i) {
        const int kmax = std::min(i, n - 1 - i);
        for (int j = 0; j < n; ++j) {
            const double p = pg.coord(j);
            Complex acc = kernel(i, i);  // lambda = 0
            for (int k = 1; k <= kmax; ++k) {
                const double lambda = k * x.spacing;
                const Complex phase = unit_phase(2.0 * p * lambda);
                // lambda and -lambda accumulated together: conjugate pair
                acc += kernel(i - k, i + k) * phase + kernel(i + k, i - k) * std::conj(phase);
            }
            acc *= x.spacing / std::numbers::pi;
            residue = std::max(residue, std::fabs(acc.imag()));
            out(i, j) = acc.real();
        }
    }
    if (residue > 1e-10) throw std::runtime_error("hermiticity violated");
    return ClassicalDensityGrid::signed_grid(x, pg, std::move(out));
}

ClassicalDensityGrid wigner_transform(const DensityMatrix& rho) {
    return wigner_transform_kernel(rho.xgrid(), rho.kernel());
}

core::VerificationReport check_wigner_morphism(const DensityMatrix& rho, double tol) {
    ClassicalDensityGrid lhs = wigner_transform(density_matrix_reversal(rho));
    ClassicalDensityGrid w = wigner_transform(rho);
    ClassicalDensityGrid rhs = induced_reversal_classical(w);
    double worst = (lhs.values() - rhs.values()).cwiseAbs().maxCoeff();
    std::size_t samples = static_cast<std::size_t>(lhs.values().size());
    return core::VerificationReport::make("eq_2_21c", samples, worst, tol, 0);
}

ConjugationSpace::ConjugationSpace(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("conjugation space needs n >= 1");
}

void ConjugationSpace::check_dims(const ConjugationVector& v) const {
    if (static_cast<int>(v.real_part.size()) != n_ ||
        static_cast<int>(v.imag_part.size()) != n_)
        throw std::invalid_argument("vector does not match the space dimension");
}

ConjugationVector ConjugationSpace::zero() const {
    return ConjugationVector{std::vector<Rational>(static_cast<std::size_t>(n_), Rational(0)),
                             std::vector<Rational>(static_cast<std::size_t>(n_), Rational(0))};
}

ConjugationVector ConjugationSpace::conjugation(const ConjugationVector& v) const {
    check_dims(v);
    ConjugationVector out = v;
    for (Rational& c : out.imag_part) c = -c;
    return out;
}

ConjugationVector ConjugationSpace::apply_J(const ConjugationVector& v) const {
    check_dims(v);
    ConjugationVector out;
    out.real_part = v.imag_part;
    for (Rational& c : out.real_part) c = -c;
    out.imag_part = v.real_part;
    return out;
}

ConjugationVector ConjugationSpace::translate(const ConjugationVector& x, const Rational& t,
                                              const ConjugationVector& a) const {
    check_dims(x);
    check_dims(a);
    ConjugationVector out = x;
    for (int i = 0; i < n_; ++i) {
        out.real_part[static_cast<std::size_t>(i)] += t * a.real_part[static_cast<std::size_t>(i)];
        out.imag_part[static_cast<std::size_t>(i)] += t * a.imag_part[static_cast<std::size_t>(i)];
    }
    return out;
}

bool ConjugationSpace::purely_imaginary(const ConjugationVector& v) const {
    check_dims(v);
    for (const Rational& c : v.real_part)
        if (c != 0) return false;
    return true;
}

core::VerificationReport conjugation_translation_check(int n, const ConjugationVector& a,
                                                       std::size_t samples,
                                                       const std::vector<Rational>& t_list,
                                                       std::uint64_t seed) {
    ConjugationSpace space(n);
    if (!space.purely_imaginary(a))
        throw std::invalid_argument("not a non-real translation");
    if (t_list.empty()) throw std::invalid_argument("no times supplied");
    core::Rng rng(seed);
    std::uniform_int_distribution<int> num(-100, 100);
    std::uniform_int_distribution<int> den(1, 50);
    auto random_vector = [&] {
        ConjugationVector v = space.zero();
        for (int i = 0; i < n; ++i) {
            v.real_part[static_cast<std::size_t>(i)] = Rational(num(rng), den(rng));
            v.imag_part[static_cast<std::size_t>(i)] = Rational(num(rng), den(rng));
        }
        return v;
    };
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        ConjugationVector x = random_vector();
        for (const Rational& t : t_list) {
            ConjugationVector lhs =
                space.conjugation(space.translate(space.conjugation(x), t, a));
            ConjugationVector rhs = space.translate(x, -t, a);
            if (!(lhs == rhs)) worst = 1.0;
        }
    }
    return core::VerificationReport::make("eq_2_17", samples * t_list.size(), worst, 0.0, seed);
}

ClassicalDensityGrid seeded_classical_density(const GridSpec& q, const GridSpec& p,
                                              core::Rng& rng, double center_range,
                                              double width_lo, double width_hi) {
    std::uniform_real_distribution<double> center(-center_range, center_range);
    std::uniform_real_distribution<double> width(width_lo, width_hi);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    const int bumps = 3;
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(q.count, p.count);
    for (int b = 0; b < bumps; ++b) {
        double cq = center(rng), cp = center(rng), w = width(rng), amp = weight(rng);
        for (int iq = 0; iq < q.count; ++iq)
            for (int ip = 0; ip < p.count; ++ip) {
                double dq = (q.coord(iq) - cq) / w, dp = (p.coord(ip) - cp) / w;
                v(iq, ip) += amp * std::exp(-(dq * dq + dp * dp));
            }
    }
    v /= v.sum() * q.spacing * p.spacing;
    v = v.unaryExpr([](double x) { return quantize(x); });
    return ClassicalDensityGrid::density(q, p, std::move(v));
}

WaveFunctionGrid seeded_wavefunction(const GridSpec& x, core::Rng& rng) {
    std::uniform_real_distribution<double> center(-1.5, 1.5);
    std::uniform_real_distribution<double> momentum(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.7, 1.4);
    double c = center(rng), k = momentum(rng), w = width(rng);
    Eigen::VectorXcd psi(x.count);
    for (int i = 0; i < x.count; ++i) {
        double xi = x.coord(i);
        double envelope = std::exp(-(xi - c) * (xi - c) / (2.0 * w * w));
        psi[i] = envelope * unit_phase(k * xi);
    }
    psi /= std::sqrt(psi.squaredNorm() * x.spacing);
    return WaveFunctionGrid(x, std::move(psi));
}

DensityMatrix seeded_density_matrix(const GridSpec& x, core::Rng& rng, int rank) {
    std::vector<double> weights;
    std::vector<WaveFunctionGrid> states;
    std::uniform_real_distribution<double> u(0.2, 1.0);
    double total = 0.0;
    std::vector<double> raw;
    for (int r = 0; r < rank; ++r) {
        raw.push_back(u(rng));
        total += raw.back();
        states.push_back(seeded_wavefunction(x, rng));
    }
    for (int r = 0; r < rank; ++r) weights.push_back(raw[static_cast<std::size_t>(r)] / total);
    // make the weights sum to 1 exactly enough for validation
    double drift = 0.0;
    for (double w : weights) drift += w;
    weights.back() += 1.0 - drift;
    return DensityMatrix::from_ensemble(weights, states);
}

WaveFunctionGrid gaussian_ground_state(const GridSpec& x) {
    Eigen::VectorXcd psi(x.count);
    const double norm = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < x.count; ++i) {
        double xi = x.coord(i);
        psi[i] = norm * std::exp(-xi * xi / 2.0);
    }
    // discrete renormalization (the Riemann sum is 1 to ~1e-16 anyway)
    psi /= std::sqrt(psi.squaredNorm() * x.spacing);
    return WaveFunctionGrid(x, std::move(psi));
}

}  // namespace revstruct::densities
