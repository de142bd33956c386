#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace oddhom {

// Exact rational on 64-bit num/den with 128-bit intermediates. All density
// and threshold comparisons go through this type; no floating point is used
// on any verification path.
class rational {
public:
    rational() = default;
    rational(long long n) : num_(n), den_(1) {}
    rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    rational operator+(const rational& o) const {
        return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    rational operator-(const rational& o) const {
        return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    rational operator*(const rational& o) const {
        return make(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    rational operator/(const rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational: division by zero");
        return make(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    bool operator==(const rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const rational& o) const { return !(*this == o); }
    bool operator<(const rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
    bool operator<=(const rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
    bool operator>(const rational& o) const { return o < *this; }
    bool operator>=(const rational& o) const { return o <= *this; }

    // Largest integer <= *this.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    long long ceil() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) {
        return os << r.str();
    }

private:
    using i128 = __int128;

    static rational make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        rational r;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: value out of 64-bit range");
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
inline rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return rational(std::stoll(s));
        long long p = std::stoll(s.substr(0, slash));
        long long q = std::stoll(s.substr(slash + 1));
        return rational(p, q);
    } catch (const std::domain_error&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

} // namespace oddhom
