// Exact dyadic rationals, exact rationals and bilateral symbol words.
// Everything here is arbitrary precision; no floating point enters the
// Baker/Bernoulli checks built on top.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "revstruct/core.hpp"

namespace revstruct::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/4", "-1/2" or "2" into an exact rational.
Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& r);

// value = numerator / 2^exponent, canonical: numerator odd or exponent 0.
class Dyadic {
public:
    Dyadic() : num_(0), exp_(0) {}
    explicit Dyadic(BigInt integer) : num_(std::move(integer)), exp_(0) {}
    Dyadic(BigInt numerator, unsigned exponent) : num_(std::move(numerator)), exp_(exponent) {
        canonicalize();
    }
    explicit Dyadic(std::int64_t integer) : num_(integer), exp_(0) {}

    static Dyadic half() { return Dyadic(BigInt(1), 1); }
    static Dyadic one() { return Dyadic(BigInt(1)); }

    const BigInt& numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return exp_ == 0; }

    Dyadic operator+(const Dyadic& o) const {
        unsigned e = std::max(exp_, o.exp_);
        return Dyadic((num_ << (e - exp_)) + (o.num_ << (e - o.exp_)), e);
    }
    Dyadic operator-(const Dyadic& o) const {
        unsigned e = std::max(exp_, o.exp_);
        return Dyadic((num_ << (e - exp_)) - (o.num_ << (e - o.exp_)), e);
    }
    Dyadic operator-() const { return Dyadic(-num_, exp_); }

    Dyadic doubled() const {
        if (exp_ > 0) return Dyadic(num_, exp_ - 1);
        return Dyadic(num_ << 1, 0u);
    }
    Dyadic halved() const { return Dyadic(num_, exp_ + 1); }

    // Representative in [0, 1).
    Dyadic mod1() const {
        BigInt den = BigInt(1) << exp_;
        BigInt r = num_ % den;
        if (r < 0) r += den;
        return Dyadic(r, exp_);
    }

    int compare(const Dyadic& o) const {
        unsigned e = std::max(exp_, o.exp_);
        BigInt lhs = num_ << (e - exp_);
        BigInt rhs = o.num_ << (e - o.exp_);
        if (lhs < rhs) return -1;
        if (lhs > rhs) return 1;
        return 0;
    }
    bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const { return compare(o) < 0; }
    bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
    bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }

    // k-th binary digit (the 2^{-k} place), k >= 1; valid for values in [0,1).
    int fractional_bit(unsigned k) const {
        if (num_ < 0 || *this >= one())
            throw std::domain_error("fractional_bit requires a value in [0,1)");
        if (k > exp_) return 0;
        return boost::multiprecision::bit_test(num_, exp_ - k) ? 1 : 0;
    }

    double to_double() const {
        return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_));
    }
    Rational to_rational() const { return Rational(num_, BigInt(1) << exp_); }
    std::string str() const;

    nlohmann::ordered_json to_json() const;

private:
    void canonicalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        while (exp_ > 0 && !boost::multiprecision::bit_test(boost::multiprecision::abs(num_), 0)) {
            num_ >>= 1;
            --exp_;
        }
    }

    BigInt num_;
    unsigned exp_;
};

// Point of the unit torus, coordinates stored as the [0,1) representative.
struct TorusPoint {
    Dyadic x;
    Dyadic y;

    TorusPoint() = default;
    TorusPoint(Dyadic px, Dyadic py) : x(px.mod1()), y(py.mod1()) {}

    bool operator==(const TorusPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const TorusPoint& o) const { return !(*this == o); }
};

// Finite window of a bilateral symbol sequence: symbols a_j for
// window_lo <= j <= window_hi over alphabet {0, ..., alphabet_size-1}.
class BilateralWord {
public:
    BilateralWord(int window_lo, int window_hi, int alphabet_size)
        : lo_(window_lo), hi_(window_hi), alphabet_(alphabet_size),
          sym_(static_cast<std::size_t>(window_hi - window_lo + 1), 0) {
        if (window_hi < window_lo) throw std::invalid_argument("empty window");
        if (alphabet_size < 2) throw std::invalid_argument("alphabet too small");
    }
    BilateralWord(int window_lo, std::vector<int> symbols, int alphabet_size)
        : lo_(window_lo), hi_(window_lo + static_cast<int>(symbols.size()) - 1),
          alphabet_(alphabet_size), sym_(std::move(symbols)) {
        if (sym_.empty()) throw std::invalid_argument("empty window");
        for (int s : sym_)
            if (s < 0 || s >= alphabet_) throw std::invalid_argument("symbol outside alphabet");
    }

    int window_lo() const { return lo_; }
    int window_hi() const { return hi_; }
    int alphabet_size() const { return alphabet_; }
    bool in_window(int j) const { return j >= lo_ && j <= hi_; }

    int at(int j) const {
        if (!in_window(j)) throw std::out_of_range("index outside word window");
        return sym_[static_cast<std::size_t>(j - lo_)];
    }
    void set(int j, int s) {
        if (!in_window(j)) throw std::out_of_range("index outside word window");
        if (s < 0 || s >= alphabet_) throw std::invalid_argument("symbol outside alphabet");
        sym_[static_cast<std::size_t>(j - lo_)] = s;
    }

    // a'_j = a_{j-1}: the right shift; window moves to [lo+1, hi+1].
    BilateralWord shifted() const {
        BilateralWord w(*this);
        ++w.lo_;
        ++w.hi_;
        return w;
    }
    // a'_j = a_{j+1}: the left shift (inverse of shifted()).
    BilateralWord shifted_back() const {
        BilateralWord w(*this);
        --w.lo_;
        --w.hi_;
        return w;
    }
    // a'_j = a_{1-j}: window maps to [1-hi, 1-lo].
    BilateralWord reversed() const {
        BilateralWord w(1 - hi_, 1 - lo_, alphabet_);
        for (int j = lo_; j <= hi_; ++j) w.set(1 - j, at(j));
        return w;
    }

    // Number of disagreeing symbols over the window intersection.
    static std::size_t mismatches(const BilateralWord& a, const BilateralWord& b) {
        int lo = std::max(a.lo_, b.lo_);
        int hi = std::min(a.hi_, b.hi_);
        std::size_t bad = 0;
        for (int j = lo; j <= hi; ++j)
            if (a.at(j) != b.at(j)) ++bad;
        return bad;
    }
    bool equal_on_overlap(const BilateralWord& o) const { return mismatches(*this, o) == 0; }

    nlohmann::ordered_json to_json() const;

private:
    int lo_;
    int hi_;
    int alphabet_;
    std::vector<int> sym_;
};

// Binary expansion of a dyadic torus point into a bilateral word on the
// window [-L, L]: x = sum_{j>=0} a_{-j} 2^{-(j+1)}, y = sum_{j>=1} a_j 2^{-j}.
BilateralWord encode(const TorusPoint& p, int window_radius);

// Inverse of encode on window-representable points; binary alphabet only.
TorusPoint decode(const BilateralWord& w);

// All dyadic values i / 2^exponent in [0, 1).
std::vector<Dyadic> unit_dyadics(unsigned exponent);

}  // namespace revstruct::exact

namespace revstruct::core {

template <>
struct SpaceTraits<exact::TorusPoint> {
    static constexpr bool exact = true;
    static double distance(const exact::TorusPoint& a, const exact::TorusPoint& b) {
        return a == b ? 0.0 : 1.0;
    }
};

template <>
struct SpaceTraits<exact::BilateralWord> {
    static constexpr bool exact = true;
    static double distance(const exact::BilateralWord& a, const exact::BilateralWord& b) {
        return static_cast<double>(exact::BilateralWord::mismatches(a, b));
    }
};

}  // namespace revstruct::core
