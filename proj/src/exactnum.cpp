#include "revstruct/exactnum.hpp"

namespace revstruct::exact {

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("nonpositive denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

std::string rational_str(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

std::string Dyadic::str() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/2^" + std::to_string(exp_);
}

nlohmann::ordered_json Dyadic::to_json() const {
    nlohmann::ordered_json j;
    j["num"] = num_.str();
    j["exp"] = exp_;
    return j;
}

nlohmann::ordered_json BilateralWord::to_json() const {
    nlohmann::ordered_json j;
    j["window_lo"] = lo_;
    j["window_hi"] = hi_;
    j["symbols"] = sym_;
    return j;
}

BilateralWord encode(const TorusPoint& p, int window_radius) {
    if (window_radius < 1) throw std::invalid_argument("window radius must be >= 1");
    // x occupies indices 0, -1, ..., -L (digits 1..L+1); y occupies 1..L.
    if (p.x.exponent() > static_cast<unsigned>(window_radius) + 1 ||
        p.y.exponent() > static_cast<unsigned>(window_radius))
        throw std::invalid_argument("window too small for the point's expansion");
    BilateralWord w(-window_radius, window_radius, 2);
    for (int j = 0; j <= window_radius; ++j)
        w.set(-j, p.x.fractional_bit(static_cast<unsigned>(j) + 1));
    for (int j = 1; j <= window_radius; ++j)
        w.set(j, p.y.fractional_bit(static_cast<unsigned>(j)));
    return w;
}

TorusPoint decode(const BilateralWord& w) {
    if (w.alphabet_size() != 2)
        throw std::invalid_argument("decode requires a binary alphabet");
    // x = sum_{j<=0} a_j 2^{-(1-j)} over the window.
    BigInt xnum = 0;
    unsigned xexp = 0;
    if (w.window_lo() <= 0) {
        int jmin = w.window_lo();
        int jmax = std::min(w.window_hi(), 0);
        xexp = static_cast<unsigned>(1 - jmin);
        for (int j = jmin; j <= jmax; ++j)
            if (w.at(j)) xnum += BigInt(1) << (j - jmin);
    }
    // y = sum_{j>=1} a_j 2^{-j} over the window.
    BigInt ynum = 0;
    unsigned yexp = 0;
    if (w.window_hi() >= 1) {
        int jmax = w.window_hi();
        yexp = static_cast<unsigned>(jmax);
        for (int j = std::max(w.window_lo(), 1); j <= jmax; ++j)
            if (w.at(j)) ynum += BigInt(1) << (jmax - j);
    }
    return TorusPoint(Dyadic(xnum, xexp), Dyadic(ynum, yexp));
}

std::vector<Dyadic> unit_dyadics(unsigned exponent) {
    std::vector<Dyadic> out;
    out.reserve(std::size_t(1) << exponent);
    BigInt count = BigInt(1) << exponent;
    for (BigInt i = 0; i < count; ++i) out.emplace_back(i, exponent);
    return out;
}

}  // namespace revstruct::exact
