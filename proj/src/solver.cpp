#include "lattice_heat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lattice_heat/errors.hpp"
#include "lattice_heat/summation.hpp"

namespace lattice_heat {

LatticeSequence convolve(const LatticeSequence& a, const LatticeSequence& b) {
    if (a.empty() || b.empty()) return LatticeSequence(a.first() + b.first(), {});
    LatticeSequence out = LatticeSequence::zeros(a.first() + b.first(), a.last() + b.last());
    auto v = out.mutable_values();
    for (int n = out.first(); n <= out.last(); ++n) {
        const int j_lo = std::max(b.first(), n - a.last());
        const int j_hi = std::min(b.last(), n - a.first());
        CompensatedSum acc;
        for (int j = j_lo; j <= j_hi; ++j) acc.add(a[n - j] * b[j]);
        v[static_cast<std::size_t>(n - out.first())] = acc.value();
    }
    return out;
}

ForcingSpec ForcingSpec::separable(LatticeSequence spatial, double gamma, double amplitude) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("forcing gamma must be positive");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("forcing amplitude must be finite");
    ForcingSpec g;
    g.kind = Kind::separable;
    g.spatial = std::move(spatial);
    g.gamma = gamma;
    g.amplitude = amplitude;
    return g;
}

double ForcingSpec::temporal(double t) const {
    if (kind == Kind::none) return 0.0;
    return amplitude * std::pow(1.0 + t, -gamma);
}

LatticeSequence ForcingSpec::at(double t) const {
    if (kind == Kind::none) return {};
    return temporal(t) * spatial;
}

double ForcingSpec::l1_norm_at(double t) const {
    if (kind == Kind::none) return 0.0;
    return std::abs(temporal(t)) * lp_norm(spatial, LpExponent::finite(1.0));
}

namespace {

/// Integral of (1 + s)^{-gamma} over [0, t].
double decay_integral(double gamma, double t) {
    if (gamma == 1.0) return std::log1p(t);
    return (std::pow(1.0 + t, 1.0 - gamma) - 1.0) / (1.0 - gamma);
}

}  // namespace

double ForcingSpec::mass_until(double t) const {
    if (kind == Kind::none) return 0.0;
    return amplitude * spatial.sum() * decay_integral(gamma, t);
}

double ForcingSpec::total_mass() const {
    if (kind == Kind::none) return 0.0;
    if (!(gamma > 1.0)) throw std::invalid_argument("total forcing mass is finite only for gamma > 1");
    return amplitude * spatial.sum() / (gamma - 1.0);
}

SolutionSnapshot evolve(const LatticeSequence& f, double t, double eps) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("evolve needs finite t >= 0");
    SolutionSnapshot snap;
    snap.t = t;
    if (t == 0.0) {
        snap.u = f;
        return snap;
    }
    const KernelSlice g = heat_kernel(t, eps);
    snap.u = convolve(g.sequence(), f);
    snap.u.set_name(f.name());
    snap.trunc_error = g.tail_mass * lp_norm(f, LpExponent::finite(1.0));
    return snap;
}

namespace {

/// Adaptive Simpson for s -> (1 + s)^{-gamma} G(t - s, .) on a fixed window.
class KernelIntegrator {
public:
    KernelIntegrator(double t, double gamma, double kernel_eps, int window, const QuadratureOptions& options)
        : t_(t), gamma_(gamma), kernel_eps_(kernel_eps), window_(window), options_(options) {}

    using Vec = std::vector<double>;

    Vec evaluate(double s) {
        if (++evaluations_ > options_.max_evaluations) {
            throw ConvergenceError("Duhamel quadrature exhausted its evaluation budget");
        }
        const double sigma = std::max(t_ - s, 0.0);
        const KernelSlice g = heat_kernel(sigma, kernel_eps_);
        const double weight = std::pow(1.0 + s, -gamma_);
        Vec out(2 * static_cast<std::size_t>(window_) + 1, 0.0);
        double dropped = g.tail_mass;
        for (int n = -g.window; n <= g.window; ++n) {
            if (n < -window_ || n > window_) {
                dropped += g.at(n);
            } else {
                out[static_cast<std::size_t>(n + window_)] = weight * g.at(n);
            }
        }
        max_dropped_ = std::max(max_dropped_, dropped);
        return out;
    }

    /// Integrates over [a, b] given the integrand at a, (a+b)/2, b.
    Vec integrate(double a, double b, const Vec& fa, const Vec& fm, const Vec& fb, double tol, int depth) {
        const double h = b - a;
        const double left_mid = a + 0.25 * h;
        const double right_mid = a + 0.75 * h;
        const Vec fl = evaluate(left_mid);
        const Vec fr = evaluate(right_mid);

        Vec coarse(fa.size());
        Vec fine(fa.size());
        double diff = 0.0;
        for (std::size_t i = 0; i < fa.size(); ++i) {
            coarse[i] = h / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
            fine[i] = h / 12.0 * (fa[i] + 4.0 * fl[i] + 2.0 * fm[i] + 4.0 * fr[i] + fb[i]);
            diff += std::abs(fine[i] - coarse[i]);
        }
        const double estimate = diff / 15.0;
        if (estimate <= tol) {
            error_ += estimate;
            for (std::size_t i = 0; i < fine.size(); ++i) fine[i] += (fine[i] - coarse[i]) / 15.0;
            return fine;
        }
        if (depth >= options_.max_depth) {
            throw ConvergenceError("Duhamel quadrature reached its subdivision depth limit");
        }
        const double mid = a + 0.5 * h;
        Vec left = integrate(a, mid, fa, fl, fm, 0.5 * tol, depth + 1);
        const Vec right = integrate(mid, b, fm, fr, fb, 0.5 * tol, depth + 1);
        for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
        return left;
    }

    [[nodiscard]] double error() const noexcept { return error_; }
    [[nodiscard]] double max_dropped() const noexcept { return max_dropped_; }

private:
    double t_;
    double gamma_;
    double kernel_eps_;
    int window_;
    QuadratureOptions options_;
    int evaluations_ = 0;
    double error_ = 0.0;
    double max_dropped_ = 0.0;
};

/// Panel breakpoints refined toward s = 0 (where the weight varies on unit
/// scale) and toward s = t (where the kernel approaches a delta).
std::vector<double> panel_breakpoints(double t) {
    std::vector<double> points{0.0, t};
    for (double s = 1.0; s < t; s *= 2.0) points.push_back(s);
    for (double sigma = 0.5 * t; sigma > 0.125; sigma *= 0.5) points.push_back(t - sigma);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [t](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + t); }),
                 points.end());
    return points;
}

}  // namespace

SolutionSnapshot duhamel(const ForcingSpec& g, double t, double eps, const QuadratureOptions& options) {
    if (g.kind != ForcingSpec::Kind::separable) throw std::invalid_argument("duhamel needs separable forcing");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("duhamel needs finite t > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("duhamel needs eps > 0");

    SolutionSnapshot snap;
    snap.t = t;
    const double spatial_l1 = lp_norm(g.spatial, LpExponent::finite(1.0));
    const double scale = std::abs(g.amplitude) * spatial_l1;
    if (scale == 0.0) {
        snap.u = LatticeSequence::zeros(g.spatial.first(), g.spatial.last());
        return snap;
    }

    const double weight_integral = decay_integral(g.gamma, t);
    const double quad_tol = 0.5 * eps / scale;
    const double kernel_eps = std::clamp(0.5 * eps / (scale * weight_integral), 1e-300, 0.5);
    const int window = heat_kernel(t, kernel_eps).window;

    KernelIntegrator integrator(t, g.gamma, kernel_eps, window, options);
    const auto points = panel_breakpoints(t);
    std::vector<double> total(2 * static_cast<std::size_t>(window) + 1, 0.0);
    auto fa = integrator.evaluate(points.front());
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double a = points[i];
        const double b = points[i + 1];
        const auto fm = integrator.evaluate(0.5 * (a + b));
        auto fb = integrator.evaluate(b);
        const auto part = integrator.integrate(a, b, fa, fm, fb, quad_tol * (b - a) / t, 0);
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += part[k];
        fa = std::move(fb);
    }

    const LatticeSequence kernel_integral(-window, std::move(total));
    snap.u = g.amplitude * convolve(kernel_integral, g.spatial);
    snap.quad_error = scale * integrator.error();
    snap.trunc_error = scale * weight_integral * integrator.max_dropped();
    return snap;
}

SolutionSnapshot duhamel_tabulated(const TabulatedForcing& g, double eps) {
    const auto& s = g.times;
    if (s.size() < 2 || s.size() != g.samples.size()) {
        throw std::invalid_argument("tabulated forcing needs at least two samples, one per time");
    }
    if (s.front() != 0.0) throw std::invalid_argument("tabulated forcing must start at time 0");
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i] > s[i - 1])) throw std::invalid_argument("tabulated forcing times must increase");
    }
    const double t = s.back();

    SolutionSnapshot snap;
    snap.t = t;
    snap.certified = false;

    std::vector<SolutionSnapshot> terms;
    terms.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) terms.push_back(evolve(g.samples[i], t - s[i], eps));

    auto trapezoid = [&](std::size_t stride) {
        LatticeSequence acc;
        double trunc = 0.0;
        std::size_t i = 0;
        for (; i + stride < s.size(); i += stride) {
            const double h = s[i + stride] - s[i];
            acc += (0.5 * h) * terms[i].u;
            acc += (0.5 * h) * terms[i + stride].u;
            trunc += 0.5 * h * (terms[i].trunc_error + terms[i + stride].trunc_error);
        }
        for (; i + 1 < s.size(); ++i) {  // remainder panels at the fine spacing
            const double h = s[i + 1] - s[i];
            acc += (0.5 * h) * terms[i].u;
            acc += (0.5 * h) * terms[i + 1].u;
            trunc += 0.5 * h * (terms[i].trunc_error + terms[i + 1].trunc_error);
        }
        return std::pair{acc, trunc};
    };

    auto [fine, trunc] = trapezoid(1);
    snap.u = std::move(fine);
    snap.trunc_error = trunc;
    if (s.size() >= 3) {
        const auto coarse = trapezoid(2).first;
        snap.quad_error = lp_norm(snap.u - coarse, LpExponent::finite(1.0)) / 3.0;
    } else {
        snap.quad_error = std::numeric_limits<double>::infinity();
    }
    return snap;
}

SolutionSnapshot solve(const LatticeSequence& f, const ForcingSpec& g, double t, double eps) {
    SolutionSnapshot out = evolve(f, t, eps);
    if (g.kind == ForcingSpec::Kind::none || t == 0.0) return out;
    const SolutionSnapshot forced = duhamel(g, t, eps);
    out.u += forced.u;
    out.quad_error += forced.quad_error;
    out.trunc_error += forced.trunc_error;
    return out;
}

ConservedQuantities conserved_quantities(const SolutionSnapshot& s) {
    CompensatedSum mass, first, second;
    for (int n = s.u.first(); n <= s.u.last(); ++n) {
        const double v = s.u[n];
        const double x = n;
        mass.add(v);
        first.add(x * v);
        second.add(x * x * v);
    }
    return {mass.value(), first.value(), second.value()};
}

}  // namespace lattice_heat
