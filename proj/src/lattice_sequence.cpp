#include "lattice_heat/lattice_sequence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "lattice_heat/summation.hpp"

namespace lattice_heat {

LatticeSequence::LatticeSequence(int offset, std::vector<double> values, std::optional<std::string> name)
    : offset_(offset), values_(std::move(values)), name_(std::move(name)) {}

LatticeSequence LatticeSequence::delta(int at, double weight) {
    return LatticeSequence(at, {weight});
}

LatticeSequence LatticeSequence::zeros(int first, int last) {
    if (last < first) return LatticeSequence(first, {});
    return LatticeSequence(first, std::vector<double>(static_cast<std::size_t>(last - first) + 1, 0.0));
}

double LatticeSequence::operator[](int n) const noexcept {
    const long i = static_cast<long>(n) - offset_;
    if (i < 0 || i >= static_cast<long>(values_.size())) return 0.0;
    return values_[static_cast<std::size_t>(i)];
}

LatticeSequence LatticeSequence::windowed(int first, int last) const {
    LatticeSequence out = zeros(first, last);
    for (int n = std::max(first, this->first()); n <= std::min(last, this->last()); ++n) {
        out.values_[static_cast<std::size_t>(n - first)] = (*this)[n];
    }
    out.name_ = name_;
    return out;
}

double LatticeSequence::sum() const noexcept { return compensated_sum(values_); }

void LatticeSequence::accumulate(const LatticeSequence& other, double sign) {
    if (other.empty()) return;
    if (empty()) {
        *this = other.windowed(other.first(), other.last());
        *this *= sign;
        return;
    }
    const int lo = std::min(first(), other.first());
    const int hi = std::max(last(), other.last());
    if (lo != first() || hi != last()) {
        auto name = name_;
        *this = windowed(lo, hi);
        name_ = std::move(name);
    }
    for (int n = other.first(); n <= other.last(); ++n) {
        values_[static_cast<std::size_t>(n - offset_)] += sign * other[n];
    }
}

LatticeSequence& LatticeSequence::operator+=(const LatticeSequence& other) {
    accumulate(other, 1.0);
    return *this;
}

LatticeSequence& LatticeSequence::operator-=(const LatticeSequence& other) {
    accumulate(other, -1.0);
    return *this;
}

LatticeSequence& LatticeSequence::operator*=(double factor) noexcept {
    for (double& v : values_) v *= factor;
    return *this;
}

LatticeSequence operator+(LatticeSequence a, const LatticeSequence& b) {
    a += b;
    return a;
}

LatticeSequence operator-(LatticeSequence a, const LatticeSequence& b) {
    a -= b;
    return a;
}

LatticeSequence operator*(double factor, LatticeSequence a) {
    a *= factor;
    return a;
}

LpExponent LpExponent::finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument("l^p exponent must be a finite number >= 1 (use infinity() for p = inf)");
    }
    return LpExponent(p, false);
}

LpExponent LpExponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    double p = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, p);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("cannot parse l^p exponent '" + text + "'");
    }
    return finite(p);
}

double LpExponent::value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

std::string LpExponent::to_string() const {
    if (infinite_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p_);
    return buf;
}

double lp_norm(const LatticeSequence& s, LpExponent p) {
    double peak = 0.0;
    for (double v : s.values()) peak = std::max(peak, std::abs(v));
    if (p.is_infinite() || peak == 0.0) return peak;
    const double exponent = p.value();
    if (exponent == 1.0) {
        CompensatedSum acc;
        for (double v : s.values()) acc.add(std::abs(v));
        return acc.value();
    }
    // Scale by the peak so the power sum cannot overflow or underflow.
    CompensatedSum acc;
    for (double v : s.values()) acc.add(std::pow(std::abs(v) / peak, exponent));
    return peak * std::pow(acc.value(), 1.0 / exponent);
}

LatticeSequence forward_difference(const LatticeSequence& s) {
    if (s.empty()) return s;
    LatticeSequence out = LatticeSequence::zeros(s.first() - 1, s.last());
    auto v = out.mutable_values();
    for (int n = out.first(); n <= out.last(); ++n) {
        v[static_cast<std::size_t>(n - out.first())] = s[n + 1] - s[n];
    }
    return out;
}

LatticeSequence discrete_laplacian(const LatticeSequence& s) {
    if (s.empty()) return s;
    LatticeSequence out = LatticeSequence::zeros(s.first() - 1, s.last() + 1);
    auto v = out.mutable_values();
    for (int n = out.first(); n <= out.last(); ++n) {
        v[static_cast<std::size_t>(n - out.first())] = s[n + 1] - 2.0 * s[n] + s[n - 1];
    }
    return out;
}

}  // namespace lattice_heat
