#include "revstruct/core.hpp"

namespace revstruct::core {

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["law_id"] = law_id;
    j["samples_tested"] = samples_tested;
    j["max_violation"] = max_violation;
    j["tolerance"] = tolerance;
    j["passed"] = passed;
    j["seed"] = seed;
    return j;
}

Reversal<double> real_line_reversal() {
    return make_reversal<double>(
        "real_line", [](const double& t) { return -t; }, 1.0,
        [](const double& t) { return t == 0.0; },
        [](const double& t) {
            if (t > 0.0) return Orientation::plus;
            if (t < 0.0) return Orientation::minus;
            return Orientation::fixed;
        });
}

Sampler<double> uniform_line_sampler(double lo, double hi) {
    return {"real_line", [lo, hi](Rng& rng) {
                std::uniform_real_distribution<double> u(lo, hi);
                return u(rng);
            }};
}

Flow<double> real_translation_flow(double a) {
    Flow<double> f;
    f.space_id = "real_line";
    f.class_id = "translations";
    f.at_time = [a](double t, const double& x) { return x + t * a; };
    return f;
}

Reversal<Vec4> minkowski_reversal() {
    Vec4 witness = {1.0, 0.0, 0.0, 0.0};
    return make_reversal<Vec4>(
        "minkowski",
        [](const Vec4& x) { return Vec4{-x[0], x[1], x[2], x[3]}; }, witness,
        [](const Vec4& x) { return x[0] == 0.0; },
        [](const Vec4& x) {
            if (x[0] > 0.0) return Orientation::plus;
            if (x[0] < 0.0) return Orientation::minus;
            return Orientation::fixed;
        });
}

Sampler<Vec4> minkowski_box_sampler(double half_width) {
    return {"minkowski", [half_width](Rng& rng) {
                std::uniform_real_distribution<double> u(-half_width, half_width);
                return Vec4{u(rng), u(rng), u(rng), u(rng)};
            }};
}

Sampler<Vec4> minkowski_spatial_slice_sampler(double half_width) {
    return {"minkowski", [half_width](Rng& rng) {
                std::uniform_real_distribution<double> u(-half_width, half_width);
                return Vec4{0.0, u(rng), u(rng), u(rng)};
            }};
}

Flow<Vec4> minkowski_translation_flow(double a0) {
    Flow<Vec4> f;
    f.space_id = "minkowski";
    f.class_id = "temporal_translations";
    f.at_time = [a0](double t, const Vec4& x) {
        return Vec4{x[0] + t * a0, x[1], x[2], x[3]};
    };
    return f;
}

}  // namespace revstruct::core
