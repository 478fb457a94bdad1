// Bernoulli schemes B(p_1,...,p_n): shift dynamics on bilateral words,
// the canonical sequence reversal a'_j = a_{1-j}, exact cylinder measures
// and the abstract time-reversal law K o S o K = S^{-1}.

#pragma once

#include <utility>
#include <vector>

#include "revstruct/core.hpp"
#include "revstruct/exactnum.hpp"

namespace revstruct::bernoulli {

using exact::BilateralWord;
using exact::Rational;

class BernoulliScheme {
public:
    // Requires every p_k > 0 and sum p_k = 1 exactly.
    explicit BernoulliScheme(std::vector<Rational> probs);
    static BernoulliScheme from_json(const nlohmann::json& j);  // {"probs": ["1/2","1/2"]}

    int alphabet_size() const { return static_cast<int>(probs_.size()); }
    const Rational& prob(int symbol) const { return probs_.at(static_cast<std::size_t>(symbol)); }
    const std::vector<Rational>& probs() const { return probs_; }

    // sum_k p_k^2: the per-pair agreement probability.
    Rational collision_probability() const;

    // Word on [-radius, radius] with iid symbols drawn from the scheme.
    BilateralWord sample_word(int radius, core::Rng& rng) const;
    core::Sampler<BilateralWord> word_sampler(int radius) const;

private:
    std::vector<Rational> probs_;
    std::vector<double> cumulative_;  // sampling thresholds
};

// Finite intersection of coordinate constraints A_j^s; indices must be
// pairwise distinct for the product-measure formula to apply.
struct Cylinder {
    std::vector<std::pair<int, int>> constraints;  // (index j, symbol s)
};

BilateralWord shift(const BilateralWord& w);        // a'_j = a_{j-1}
BilateralWord shift_back(const BilateralWord& w);   // a'_j = a_{j+1}
BilateralWord reverse(const BilateralWord& w);      // a'_j = a_{1-j}

Cylinder shift_image(const Cylinder& c);    // (j,s) -> (j+1,s)
Cylinder reverse_image(const Cylinder& c);  // (j,s) -> (1-j,s)

// Product measure of a cylinder; the empty cylinder is all of M, measure 1.
// Throws "not a product cylinder" on duplicate indices.
Rational measure(const BernoulliScheme& scheme, const Cylinder& c);

// mu(S(C)) = mu(C) for each supplied cylinder, exact.
core::VerificationReport check_shift_preserves_measure(const BernoulliScheme& scheme,
                                                       const std::vector<Cylinder>& cylinders);
// mu(K(C)) = mu(C), the reversal analogue.
core::VerificationReport check_reversal_preserves_measure(const BernoulliScheme& scheme,
                                                          const std::vector<Cylinder>& cylinders);

// Index pairing convention for the reversal's fixed set. The reversal
// a'_j = a_{1-j} pairs j with 1-j; the paper's fixed-set formula pairs j
// with -j. Both fixed sets have the same (vanishing) measure.
enum class FixedPairing { adjacent, symmetric };

// Exact measure of the words satisfying the first `pair_count` index-pair
// constraints: (sum_k p_k^2)^pair_count.
Rational fixed_set_measure(const BernoulliScheme& scheme, int pair_count,
                           FixedPairing pairing = FixedPairing::adjacent);

// Whether the word equals its reversal on the window intersection.
bool is_reversal_fixed(const BilateralWord& w);

// K(S(K(w))) = S^{-1}(w) on the full common window, exact, over sampled words.
core::VerificationReport check_reversal_relation(const BernoulliScheme& scheme,
                                                 std::size_t samples, int window_radius,
                                                 std::uint64_t seed,
                                                 std::string law_id = "eq_3_10");

// Engine adapters.
core::Reversal<BilateralWord> word_reversal(int alphabet_size);
core::Cascade<BilateralWord> shift_cascade();

}  // namespace revstruct::bernoulli
