#include "revstruct/bernoulli.hpp"

#include <algorithm>
#include <set>

namespace revstruct::bernoulli {

BernoulliScheme::BernoulliScheme(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) throw std::invalid_argument("scheme needs at least two symbols");
    Rational total = 0;
    for (const Rational& p : probs_) {
        if (p <= 0) throw std::invalid_argument("probabilities must be positive");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("probabilities must sum to 1 exactly");
    double acc = 0.0;
    for (const Rational& p : probs_) {
        acc += p.convert_to<double>();
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

BernoulliScheme BernoulliScheme::from_json(const nlohmann::json& j) {
    std::vector<Rational> probs;
    for (const auto& entry : j.at("probs")) probs.push_back(exact::parse_rational(entry.get<std::string>()));
    return BernoulliScheme(std::move(probs));
}

Rational BernoulliScheme::collision_probability() const {
    Rational s = 0;
    for (const Rational& p : probs_) s += p * p;
    return s;
}

BilateralWord BernoulliScheme::sample_word(int radius, core::Rng& rng) const {
    BilateralWord w(-radius, radius, alphabet_size());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int j = -radius; j <= radius; ++j) {
        double x = u(rng);
        int s = static_cast<int>(std::lower_bound(cumulative_.begin(), cumulative_.end(), x) -
                                 cumulative_.begin());
        if (s >= alphabet_size()) s = alphabet_size() - 1;
        w.set(j, s);
    }
    return w;
}

core::Sampler<BilateralWord> BernoulliScheme::word_sampler(int radius) const {
    BernoulliScheme copy = *this;
    return {"bernoulli_words", [copy, radius](core::Rng& rng) { return copy.sample_word(radius, rng); }};
}

BilateralWord shift(const BilateralWord& w) { return w.shifted(); }
BilateralWord shift_back(const BilateralWord& w) { return w.shifted_back(); }
BilateralWord reverse(const BilateralWord& w) { return w.reversed(); }

Cylinder shift_image(const Cylinder& c) {
    Cylinder out;
    for (auto [j, s] : c.constraints) out.constraints.emplace_back(j + 1, s);
    return out;
}

Cylinder reverse_image(const Cylinder& c) {
    Cylinder out;
    for (auto [j, s] : c.constraints) out.constraints.emplace_back(1 - j, s);
    return out;
}

Rational measure(const BernoulliScheme& scheme, const Cylinder& c) {
    std::set<int> seen;
    Rational m = 1;
    for (auto [j, s] : c.constraints) {
        if (!seen.insert(j).second)
            throw std::invalid_argument("not a product cylinder: duplicate index");
        if (s < 0 || s >= scheme.alphabet_size())
            throw std::invalid_argument("symbol outside alphabet");
        m *= scheme.prob(s);
    }
    return m;
}

namespace {
core::VerificationReport check_image_measure(const BernoulliScheme& scheme,
                                             const std::vector<Cylinder>& cylinders,
                                             Cylinder (*image)(const Cylinder&),
                                             std::string law_id) {
    double worst = 0.0;
    for (const Cylinder& c : cylinders)
        if (measure(scheme, c) != measure(scheme, image(c))) worst = 1.0;
    return core::VerificationReport::make(std::move(law_id), cylinders.size(), worst, 0.0, 0);
}
}  // namespace

core::VerificationReport check_shift_preserves_measure(const BernoulliScheme& scheme,
                                                       const std::vector<Cylinder>& cylinders) {
    return check_image_measure(scheme, cylinders, &shift_image, "eq_3_7");
}

core::VerificationReport check_reversal_preserves_measure(const BernoulliScheme& scheme,
                                                          const std::vector<Cylinder>& cylinders) {
    return check_image_measure(scheme, cylinders, &reverse_image, "eq_3_7_reversal");
}

Rational fixed_set_measure(const BernoulliScheme& scheme, int pair_count, FixedPairing) {
    if (pair_count < 1) throw std::invalid_argument("pair count must be >= 1");
    // Each index pair {j, 1-j} (or {j, -j}) is an independent agreement
    // event of probability sum_k p_k^2, so both conventions give the same
    // value; only the constrained indices differ.
    Rational agree = scheme.collision_probability();
    Rational m = 1;
    for (int i = 0; i < pair_count; ++i) m *= agree;
    return m;
}

bool is_reversal_fixed(const BilateralWord& w) {
    return w.equal_on_overlap(w.reversed());
}

core::VerificationReport check_reversal_relation(const BernoulliScheme& scheme,
                                                 std::size_t samples, int window_radius,
                                                 std::uint64_t seed, std::string law_id) {
    core::Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        BilateralWord w = scheme.sample_word(window_radius, rng);
        BilateralWord lhs = reverse(shift(reverse(w)));
        BilateralWord rhs = shift_back(w);
        // Both sides land on the same window [-radius-1, radius-1].
        if (lhs.window_lo() != rhs.window_lo() || lhs.window_hi() != rhs.window_hi())
            worst = std::max(worst, 1.0);
        worst = std::max(worst, core::distance(lhs, rhs));
    }
    return core::VerificationReport::make(std::move(law_id), samples, worst, 0.0, seed);
}

core::Reversal<BilateralWord> word_reversal(int alphabet_size) {
    BilateralWord witness(0, 1, alphabet_size);
    witness.set(0, 1);  // a_0 = 1, a_1 = 0: moved by the reversal
    return core::make_reversal<BilateralWord>(
        "bernoulli_words", [](const BilateralWord& w) { return w.reversed(); }, witness,
        [](const BilateralWord& w) { return is_reversal_fixed(w); });
}

core::Cascade<BilateralWord> shift_cascade() {
    core::Cascade<BilateralWord> c;
    c.space_id = "bernoulli_words";
    c.step = [](const BilateralWord& w) { return w.shifted(); };
    c.inverse_step = [](const BilateralWord& w) { return w.shifted_back(); };
    return c;
}

}  // namespace revstruct::bernoulli
