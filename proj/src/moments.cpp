#include "lattice_heat/moments.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lattice_heat/errors.hpp"
#include "lattice_heat/summation.hpp"

namespace lattice_heat {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;  // constant term first

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const RatPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int sign_at(const RatPoly& p, const Rational& x) {
    const Rational v = eval(p, x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
    trim(d);
    return d;
}

RatPoly remainder(RatPoly num, const RatPoly& den) {
    const std::size_t dd = den.size() - 1;
    while (num.size() >= den.size()) {
        const Rational factor = num.back() / den.back();
        const std::size_t shift = num.size() - 1 - dd;
        for (std::size_t i = 0; i <= dd; ++i) num[shift + i] -= factor * den[i];
        num.pop_back();  // leading term cancels exactly
        trim(num);
    }
    return num;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq{p, derivative(p)};
    while (!seq.back().empty() && seq.back().size() > 1) {
        RatPoly r = remainder(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    return seq;
}

int sign_changes(const std::vector<RatPoly>& seq, const Rational& x) {
    int changes = 0;
    int previous = 0;
    for (const auto& q : seq) {
        const int s = sign_at(q, x);
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++changes;
        previous = s;
    }
    return changes;
}

/// Distinct roots of p in (a, b], by Sturm's theorem.
int roots_in(const std::vector<RatPoly>& seq, const Rational& a, const Rational& b) {
    return sign_changes(seq, a) - sign_changes(seq, b);
}

/// A split point strictly inside (a, b) that is not a root of p.
Rational split_point(const RatPoly& p, const Rational& a, const Rational& b) {
    static const std::array<Rational, 5> fractions{Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(2, 5),
                                                   Rational(3, 5)};
    for (const auto& f : fractions) {
        const Rational m = a + (b - a) * f;
        if (sign_at(p, m) != 0) return m;
    }
    throw ExactnessError("no root-free split point found");  // p has at most deg roots
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coeff(int power) const {
    if (power < 0 || power > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(power)];
}

std::string IntPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        const BigInt mag = c < 0 ? BigInt(-c) : c;
        if (i == 0 || mag != 1) out += mag.str();
        if (i >= 1) out += "t";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

std::vector<IntPolynomial> moment_polynomials(int k_max) {
    if (k_max < 0 || k_max > kMaxMomentOrder) {
        throw std::invalid_argument("k_max must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
    }
    std::vector<IntPolynomial> polys{IntPolynomial({BigInt(1)})};
    for (int k = 1; k <= k_max; ++k) {
        // Row 2k of Pascal's triangle.
        std::vector<BigInt> binom(2 * k + 1);
        binom[0] = 1;
        for (int i = 1; i <= 2 * k; ++i) binom[i] = binom[i - 1] * (2 * k - i + 1) / i;

        // p_k' = sum_{j<k} C(2k, 2j) p_j has degree k - 1.
        std::vector<BigInt> deriv(static_cast<std::size_t>(k), 0);
        for (int j = 0; j < k; ++j) {
            const auto& pj = polys[static_cast<std::size_t>(j)].coeffs();
            for (std::size_t n = 0; n < pj.size(); ++n) deriv[n] += binom[2 * j] * pj[n];
        }

        std::vector<BigInt> coeffs(static_cast<std::size_t>(k) + 1, 0);
        for (int n = 1; n <= k; ++n) {
            const BigInt& d = deriv[static_cast<std::size_t>(n - 1)];
            if (d % n != 0) {
                throw ExactnessError("inexact division integrating p_" + std::to_string(k));
            }
            coeffs[static_cast<std::size_t>(n)] = d / n;
        }
        polys.emplace_back(std::move(coeffs));
    }
    return polys;
}

double poly_eval(const IntPolynomial& p, double x) {
    double acc = 0.0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
}

std::vector<double> poly_real_roots(const IntPolynomial& p, double tol) {
    if (!(tol >= 1e-12)) throw std::invalid_argument("root tolerance must be >= 1e-12");
    if (p.degree() < 0) throw std::invalid_argument("the zero polynomial has no isolated roots");
    if (p.degree() > kMaxRootDegree) {
        throw std::invalid_argument("root finding is limited to degree " + std::to_string(kMaxRootDegree));
    }

    // Factor out t^m: those roots are exactly zero.
    std::vector<double> roots;
    RatPoly q;
    {
        int m = 0;
        while (p.coeff(m) == 0) ++m;
        roots.assign(static_cast<std::size_t>(m), 0.0);
        for (int i = m; i <= p.degree(); ++i) q.emplace_back(p.coeff(i));
    }
    const int expected = static_cast<int>(q.size()) - 1;
    if (expected == 0) return roots;

    const Rational lo = -(p.degree() + 2);
    const Rational hi = 0;
    if (sign_at(q, lo) == 0) throw ConvergenceError("root on the search boundary");

    const auto seq = sturm_sequence(q);
    if (roots_in(seq, lo, hi) != expected) {
        throw ConvergenceError("polynomial does not have " + std::to_string(expected) +
                               " distinct real roots in [" + std::to_string(-(p.degree() + 2)) + ", 0)");
    }

    // Isolate: split until every interval (a, b] holds exactly one root.
    struct Interval {
        Rational a, b;
        int count;
    };
    std::vector<Interval> pending{{lo, hi, expected}};
    std::vector<Interval> isolated;
    while (!pending.empty()) {
        Interval iv = pending.back();
        pending.pop_back();
        if (iv.count == 0) continue;
        if (iv.count == 1) {
            isolated.push_back(iv);
            continue;
        }
        const Rational m = split_point(q, iv.a, iv.b);
        const int left = roots_in(seq, iv.a, m);
        pending.push_back({iv.a, m, left});
        pending.push_back({m, iv.b, iv.count - left});
    }

    // Refine each isolating interval by sign bisection.
    const Rational width = Rational(tol);
    for (auto& iv : isolated) {
        Rational a = iv.a;
        Rational b = iv.b;
        if (sign_at(q, b) == 0) {
            roots.push_back(to_double(b));
            continue;
        }
        const int sa = sign_at(q, a);
        bool exact = false;
        while (b - a >= width) {
            const Rational m = (a + b) / 2;
            const int sm = sign_at(q, m);
            if (sm == 0) {
                roots.push_back(to_double(m));
                exact = true;
                break;
            }
            if (sm == sa) a = m;
            else b = m;
        }
        if (!exact) roots.push_back(to_double((a + b) / 2));
    }

    if (static_cast<int>(roots.size()) != p.degree()) {
        throw ConvergenceError("isolated root count differs from the degree");
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

MomentValue kernel_moment(const KernelSlice& slice, int order) {
    if (order < 0) throw std::invalid_argument("moment order must be nonnegative");
    const int width = slice.window;
    if (width > 0 && order * std::log(static_cast<double>(width)) > std::log(1e300)) {
        throw std::overflow_error("n^order exceeds the binary64 range on this window");
    }

    CompensatedSum sum;
    for (int n = -width; n <= width; ++n) {
        sum.add(std::pow(static_cast<double>(n), order) * slice.at(n));
    }

    MomentValue out{sum.value(), 0.0};
    if (width == 0 || slice.at(width) == 0.0) return out;

    // Ratios b_{n+1}/b_n decrease in n, and ((n+1)/n)^order <= (1 + 1/N)^order
    // for n >= N, so the weighted tail is dominated by a geometric series.
    const double edge = slice.at(width);
    const double ratio = edge / slice.at(width - 1);
    const double growth = ratio * std::pow(1.0 + 1.0 / width, order);
    if (growth >= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    out.tail_bound = 2.0 * std::pow(static_cast<double>(width), order) * edge * growth / (1.0 - growth);
    return out;
}

MomentValue certified_kernel_moment(double t, int order, double abs_target) {
    if (!(abs_target > 0.0)) throw std::invalid_argument("moment target must be positive");
    KernelSlice slice = heat_kernel(t, 1e-16);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const MomentValue m = kernel_moment(slice, order);
        if (m.tail_bound <= abs_target) return m;
        slice = heat_kernel(t, 1e-16, slice.window + slice.window / 2 + 8);
    }
    throw ConvergenceError("weighted moment tail did not reach its target");
}

}  // namespace lattice_heat
