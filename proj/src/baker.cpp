#include "revstruct/baker.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace revstruct::baker {

namespace {
const Dyadic kHalf = Dyadic::half();
const Dyadic kOne = Dyadic::one();
}  // namespace

TorusPoint baker_step(const TorusPoint& m) {
    if (m.x < kHalf) return TorusPoint(m.x.doubled(), m.y.halved());
    return TorusPoint(m.x.doubled() - kOne, (m.y + kOne).halved());
}

TorusPoint baker_inverse(const TorusPoint& m) {
    if (m.y < kHalf) return TorusPoint(m.x.halved(), m.y.doubled());
    return TorusPoint((m.x + kOne).halved(), m.y.doubled() - kOne);
}

TorusPoint torus_reversal(const TorusPoint& m) { return TorusPoint(m.y, m.x); }

TorusPoint iterate(const TorusPoint& m, std::int64_t t) {
    TorusPoint p = m;
    for (std::int64_t i = 0; i < t; ++i) p = baker_step(p);
    for (std::int64_t i = 0; i > t; --i) p = baker_inverse(p);
    return p;
}

core::Cascade<TorusPoint> baker_cascade() {
    core::Cascade<TorusPoint> c;
    c.space_id = "baker_torus";
    c.step = [](const TorusPoint& m) { return baker_step(m); };
    c.inverse_step = [](const TorusPoint& m) { return baker_inverse(m); };
    return c;
}

core::Reversal<TorusPoint> baker_reversal_system() {
    TorusPoint witness(Dyadic(1, 2), Dyadic(3, 2));  // (1/4, 3/4), off-diagonal
    return core::make_reversal<TorusPoint>(
        "baker_torus", [](const TorusPoint& m) { return torus_reversal(m); }, witness,
        [](const TorusPoint& m) { return m.x == m.y; });
}

core::VerificationReport check_baker_reversal(int t_max, unsigned grid_exponent) {
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    const std::vector<Dyadic> grid = exact::unit_dyadics(grid_exponent);
    std::size_t checks = 0;
    double worst = 0.0;
    for (const Dyadic& x : grid) {
        for (const Dyadic& y : grid) {
            TorusPoint m(x, y);
            TorusPoint km = torus_reversal(m);
            // forward chain u_t = S^t(K m) against w_t = S^{-t}(m), and the
            // mirrored chain for negative t, advanced one step at a time.
            TorusPoint u = km, w = m, u_neg = km, w_neg = m;
            // t = 0 is the identity on both sides.
            if (torus_reversal(km) != m) worst = 1.0;
            ++checks;
            for (int t = 1; t <= t_max; ++t) {
                u = baker_step(u);
                w = baker_inverse(w);
                if (torus_reversal(u) != w) worst = 1.0;
                u_neg = baker_inverse(u_neg);
                w_neg = baker_step(w_neg);
                if (torus_reversal(u_neg) != w_neg) worst = 1.0;
                checks += 2;
            }
        }
    }
    return core::VerificationReport::make("eq_5_3", checks, worst, 0.0, 0);
}

core::VerificationReport check_measure_preservation(unsigned grid_exponent) {
    // Cells of side 2^-e (e >= 1) lie in a single branch, so S maps each
    // affinely onto one rectangle of the 2^{e-1} x 2^{e+1} refinement. The
    // image corners landing on that lattice, pairwise distinct, means S
    // permutes a tiling by equal-area rectangles: exact measure preservation.
    if (grid_exponent < 1) throw std::invalid_argument("grid exponent must be >= 1");
    const std::vector<Dyadic> grid = exact::unit_dyadics(grid_exponent);
    std::set<std::pair<std::string, std::string>> images;
    double worst = 0.0;
    std::size_t checks = 0;
    for (const Dyadic& x : grid) {
        for (const Dyadic& y : grid) {
            TorusPoint corner(x, y);
            TorusPoint image = baker_step(corner);
            if (image.x.exponent() > grid_exponent - 1) worst = 1.0;
            if (image.y.exponent() > grid_exponent + 1) worst = 1.0;
            if (!images.emplace(image.x.str(), image.y.str()).second) worst = 1.0;
            ++checks;
        }
    }
    return core::VerificationReport::make("eq_5_1", checks, worst, 0.0, 0);
}

core::VerificationReport conjugacy_check(unsigned grid_exponent, int window_radius) {
    // the baker step can deepen the y expansion by one digit, so the window
    // must cover grid_exponent + 1
    if (window_radius < 1 || static_cast<unsigned>(window_radius) < grid_exponent + 1)
        throw std::invalid_argument("window too small for the grid exponent");
    const std::vector<Dyadic> grid = exact::unit_dyadics(grid_exponent);
    double worst = 0.0;
    std::size_t checks = 0;
    for (const Dyadic& x : grid) {
        for (const Dyadic& y : grid) {
            TorusPoint m(x, y);
            BilateralWord code = exact::encode(m, window_radius);
            // dynamics intertwining on the shifted window overlap
            BilateralWord lhs = exact::encode(baker_step(m), window_radius);
            BilateralWord rhs = bernoulli::shift(code);
            if (!lhs.equal_on_overlap(rhs)) worst = 1.0;
            // reversal intertwining
            BilateralWord lhs_k = exact::encode(torus_reversal(m), window_radius);
            BilateralWord rhs_k = bernoulli::reverse(code);
            if (!lhs_k.equal_on_overlap(rhs_k)) worst = 1.0;
            // encode must stay invertible on the grid
            if (exact::decode(code) != m) worst = 1.0;
            checks += 3;
        }
    }
    return core::VerificationReport::make("eq_5_4", checks, worst, 0.0, 0);
}

namespace {

// Exact length of {v in [0,1) : prescribed binary digits}, by counting
// matching dyadic intervals at the finest constrained digit.
Rational digit_set_length(const std::vector<std::pair<unsigned, int>>& digits) {
    if (digits.empty()) return Rational(1);
    unsigned depth = 0;
    for (auto [k, bit] : digits) depth = std::max(depth, k);
    std::uint64_t cells = std::uint64_t(1) << depth;
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < cells; ++i) {
        bool ok = true;
        for (auto [k, bit] : digits) {
            int have = static_cast<int>((i >> (depth - k)) & 1u);
            if (have != bit) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return Rational(exact::BigInt(count), exact::BigInt(1) << depth);
}

void enumerate_cylinders(int max_rank, int index_radius,
                         const std::function<void(const bernoulli::Cylinder&)>& visit) {
    std::vector<int> indices;
    for (int j = -index_radius; j <= index_radius; ++j) indices.push_back(j);
    const int n = static_cast<int>(indices.size());
    // choose up to max_rank distinct indices, then all symbol assignments
    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int start) {
        if (!chosen.empty()) {
            const int rank = static_cast<int>(chosen.size());
            for (int mask = 0; mask < (1 << rank); ++mask) {
                bernoulli::Cylinder c;
                for (int b = 0; b < rank; ++b)
                    c.constraints.emplace_back(chosen[static_cast<std::size_t>(b)], (mask >> b) & 1);
                visit(c);
            }
        }
        if (static_cast<int>(chosen.size()) == max_rank) return;
        for (int i = start; i < n; ++i) {
            chosen.push_back(indices[static_cast<std::size_t>(i)]);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
}

}  // namespace

core::VerificationReport measure_correspondence_check(int max_rank, int index_radius) {
    bernoulli::BernoulliScheme fair({Rational(1, 2), Rational(1, 2)});
    double worst = 0.0;
    std::size_t checks = 0;
    enumerate_cylinders(max_rank, index_radius, [&](const bernoulli::Cylinder& c) {
        // Split constraints into x digits (j <= 0 -> digit 1-j) and y digits
        // (j >= 1 -> digit j); the preimage is a product of two digit sets.
        std::vector<std::pair<unsigned, int>> xdigits, ydigits;
        for (auto [j, s] : c.constraints) {
            if (j <= 0)
                xdigits.emplace_back(static_cast<unsigned>(1 - j), s);
            else
                ydigits.emplace_back(static_cast<unsigned>(j), s);
        }
        Rational area = digit_set_length(xdigits) * digit_set_length(ydigits);
        if (area != bernoulli::measure(fair, c)) worst = 1.0;
        ++checks;
    });
    return core::VerificationReport::make("eq_1_7", checks, worst, 0.0, 0);
}

ThetaFunction::ThetaFunction(std::vector<int> indices) : idx_(std::move(indices)) {
    if (idx_.empty())
        throw std::invalid_argument("constant function excluded: index set must be non-empty");
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

int theta0(const TorusPoint& m) { return m.x < kHalf ? 1 : -1; }

int theta_eval(const ThetaFunction& f, const TorusPoint& m) {
    int value = 1;
    // Walk outward from the base point, reusing iterates: theta_n needs
    // S^{-n}(m), so positive indices step backwards, negative ones forward.
    TorusPoint cur = m;
    int pos = 0;
    for (int n : f.indices()) {
        if (n < 0) continue;
        while (pos < n) {
            cur = baker_inverse(cur);
            ++pos;
        }
        value *= theta0(cur);
    }
    cur = m;
    pos = 0;
    for (auto it = f.indices().rbegin(); it != f.indices().rend(); ++it) {
        int n = *it;
        if (n >= 0) continue;
        while (pos > n) {
            cur = baker_step(cur);
            --pos;
        }
        value *= theta0(cur);
    }
    return value;
}

ThetaFunction reversal_on_theta(const ThetaFunction& f) {
    std::vector<int> out;
    for (int n : f.indices()) out.push_back(1 - n);
    return ThetaFunction(std::move(out));
}

ThetaFunction koopman_shift(const ThetaFunction& f, int t) {
    std::vector<int> out;
    for (int n : f.indices()) out.push_back(n + t);
    return ThetaFunction(std::move(out));
}

Rational theta_inner_product(const ThetaFunction& f, const ThetaFunction& g) {
    // theta_n depends on y digit n (n >= 1) or x digit 1-n (n <= 0), so the
    // product is constant on cells of size 2^-dx x 2^-dy.
    unsigned dx = 1, dy = 1;
    for (const ThetaFunction* h : {&f, &g}) {
        for (int n : h->indices()) {
            if (n <= 0)
                dx = std::max(dx, static_cast<unsigned>(1 - n));
            else
                dy = std::max(dy, static_cast<unsigned>(n));
        }
    }
    const std::vector<Dyadic> xs = exact::unit_dyadics(dx);
    const std::vector<Dyadic> ys = exact::unit_dyadics(dy);
    const Rational cell_area(exact::BigInt(1), exact::BigInt(1) << (dx + dy));
    Rational total = 0;
    for (const Dyadic& x : xs) {
        for (const Dyadic& y : ys) {
            TorusPoint corner(x, y);
            total += Rational(theta_eval(f, corner) * theta_eval(g, corner)) * cell_area;
        }
    }
    return total;
}

AgingOperator::AgingOperator(int window_radius, int max_factors)
    : radius_(window_radius), cap_(max_factors) {
    if (window_radius < 0 || max_factors < 1)
        throw std::invalid_argument("bad aging-operator window");
    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int start) {
        if (!chosen.empty()) basis_.emplace_back(chosen);
        if (static_cast<int>(chosen.size()) == cap_) return;
        for (int n = start; n <= radius_; ++n) {
            chosen.push_back(n);
            rec(n + 1);
            chosen.pop_back();
        }
    };
    rec(-radius_);
}

bool AgingOperator::in_window(const ThetaFunction& f) const {
    return f.min_index() >= -radius_ && f.max_index() <= radius_ &&
           static_cast<int>(f.indices().size()) <= cap_;
}

int AgingOperator::age(const ThetaFunction& f) const {
    if (!in_window(f)) throw std::invalid_argument("theta index set outside operator window");
    return f.max_index();
}

bool AgingOperator::spectral_keeps(int s, const ThetaFunction& f) const {
    return f.max_index() <= s;
}

ThetaFunction AgingOperator::koopman(const ThetaFunction& f, int t) const {
    ThetaFunction shifted = koopman_shift(f, t);
    if (!in_window(shifted))
        throw std::invalid_argument("koopman shift leaves the operator window");
    return shifted;
}

core::VerificationReport AgingOperator::check_spectral_decomposition() const {
    double worst = 0.0;
    for (const ThetaFunction& f : basis_) {
        int fired = 0;
        long weighted = 0;
        for (int s = -radius_; s <= radius_; ++s) {
            bool keeps = spectral_keeps(s, f) && !spectral_keeps(s - 1, f);
            if (keeps) {
                ++fired;
                weighted += s;
            }
        }
        if (fired != 1 || weighted != age(f)) worst = 1.0;
    }
    return core::VerificationReport::make("eq_5_8", basis_.size(), worst, 0.0, 0);
}

core::VerificationReport AgingOperator::check_aging_commutation(int t) const {
    // U_{-t} T U_t theta_F = (max F + t) theta_F = (T + t) theta_F.
    double worst = 0.0;
    for (const ThetaFunction& f : basis_) {
        ThetaFunction shifted = koopman_shift(f, t);
        int lhs_eigenvalue = shifted.max_index();  // T on U_t theta_F
        ThetaFunction back = koopman_shift(shifted, -t);
        if (!(back == f)) worst = 1.0;
        if (lhs_eigenvalue != f.max_index() + t) worst = 1.0;
    }
    return core::VerificationReport::make("eq_2_24", basis_.size(), worst, 0.0, 0);
}

core::VerificationReport AgingOperator::check_imprimitivity(int s, int t) const {
    // E_{s+t} theta_F vs U_t E_s U_t^{-1} theta_F: each side annihilates or
    // fixes theta_F, decided by index arithmetic.
    double worst = 0.0;
    for (const ThetaFunction& f : basis_) {
        bool lhs = spectral_keeps(s + t, f);
        bool rhs = koopman_shift(f, -t).max_index() <= s;
        if (lhs != rhs) worst = 1.0;
    }
    return core::VerificationReport::make("eq_2_22", basis_.size(), worst, 0.0, 0);
}

core::VerificationReport AgingOperator::check_reversal_conjugates_koopman() const {
    double worst = 0.0;
    for (const ThetaFunction& f : basis_) {
        ThetaFunction lhs = reversal_on_theta(koopman_shift(reversal_on_theta(f), 1));
        ThetaFunction rhs = koopman_shift(f, -1);
        if (!(lhs == rhs)) worst = 1.0;
    }
    return core::VerificationReport::make("eq_5_3_theta", basis_.size(), worst, 0.0, 0);
}

std::pair<int, ThetaFunction> aging_apply(const AgingOperator& op, const ThetaFunction& f) {
    return {op.age(f), f};
}

std::vector<std::vector<int>> rasterize_theta(const ThetaFunction& f, int resolution_exponent) {
    if (resolution_exponent < 0 || resolution_exponent > 10)
        throw std::invalid_argument("resolution exponent must be in [0, 10]");
    const std::vector<Dyadic> grid = exact::unit_dyadics(static_cast<unsigned>(resolution_exponent));
    const std::size_t n = grid.size();
    std::vector<std::vector<int>> img(n, std::vector<int>(n, 0));
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix)
            img[iy][ix] = theta_eval(f, TorusPoint(grid[ix], grid[iy]));
    return img;
}

std::vector<std::vector<int>> rasterize_partition(int t, int resolution_exponent) {
    // The S^t image of {A, B} colors m by the branch of S^{-t}(m): theta_t.
    return rasterize_theta(ThetaFunction({t}), resolution_exponent);
}

}  // namespace revstruct::baker
