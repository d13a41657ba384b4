// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--artifacts DIR] [--expect-fail N ...]
//
// Exit status is 0 when exactly the criteria named by --expect-fail fail
// (none by default). An expected failure that passes is an error too.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice_heat/analysis.hpp"
#include "lattice_heat/bessel.hpp"
#include "lattice_heat/io.hpp"
#include "lattice_heat/kernel.hpp"
#include "lattice_heat/moments.hpp"
#include "lattice_heat/solver.hpp"

using namespace lattice_heat;

namespace {

const LpExponent kL1 = LpExponent::finite(1.0);
const LpExponent kL2 = LpExponent::finite(2.0);
const LpExponent kLinf = LpExponent::infinity();
const std::vector<LpExponent> kExponents{kL1, kL2, kLinf};

/// Collects failed sub-checks of one criterion.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++count_;
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string& text) { notes_.push_back(text); }

    [[nodiscard]] bool ok() const { return failures_.empty(); }
    [[nodiscard]] int count() const { return count_; }
    [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }
    [[nodiscard]] const std::vector<std::string>& notes() const { return notes_; }

private:
    int count_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

std::string trunc4(double x) {
    const double t = std::trunc(x * 1e4) / 1e4;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", t);
    const std::string s = buf;
    return s == "-0.0000" ? "0.0000" : s;
}

double rel_err(double got, double want, double floor = 1.0) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

bool nonincreasing(const DecayReport& r, std::size_t from) {
    for (std::size_t i = from + 1; i < r.pairs.size(); ++i) {
        if (r.pairs[i].second > r.pairs[i - 1].second) return false;
    }
    return true;
}

LatticeSequence random_sequence(std::mt19937_64& rng, int points, bool nonnegative) {
    std::uniform_int_distribution<int> start(-10, 10);
    std::uniform_real_distribution<double> value(nonnegative ? 0.0 : -1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(points));
    for (auto& x : v) x = value(rng);
    return LatticeSequence(start(rng), std::move(v));
}

std::vector<double> grid() { return dyadic_grid(16.0, 1024.0); }

// 1. Backward recurrence against the power series and Kummer series.
void oracle_agreement(Checks& c) {
    double worst_series = 0.0;
    double worst_kummer = 0.0;
    for (double tau : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto row = scaled_bessel_row(tau, 1e-16, 10);
        for (int n = 0; n <= 10; ++n) {
            const double v = row.at(n);
            const double es = std::abs(v - scaled_bessel_series(tau, n));
            const double ek = std::abs(v - scaled_bessel_kummer(tau, n, 400));
            worst_series = std::max(worst_series, es);
            worst_kummer = std::max(worst_kummer, ek);
            c.expect(es <= 1e-12, fmt("series tau=%g n=%g err=%.3g", tau, n, es));
            c.expect(ek <= 1e-10, fmt("kummer tau=%g n=%g err=%.3g", tau, n, ek));
        }
    }
    c.note(fmt("max series err %.2e, max Kummer err %.2e", worst_series, worst_kummer));
}

// 2. Kernel mass.
void mass_conservation(Checks& c) {
    double worst = 0.0;
    for (double t : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const double e = std::abs(heat_kernel(t, 1e-12).sequence().sum() - 1.0);
        worst = std::max(worst, e);
        c.expect(e <= 1e-12, fmt("t=%g |sum G - 1|=%.3g", t, e));
    }
    c.note(fmt("max |sum G - 1| = %.2e", worst));
}

// 3. Even moments equal p_k(2t); odd moments vanish.
void moment_identities(Checks& c) {
    const auto p = moment_polynomials(6);
    double worst_even = 0.0;
    double worst_odd = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        for (int k = 0; k <= 6; ++k) {
            const double want = poly_eval(p[static_cast<std::size_t>(k)], 2.0 * t);
            const auto m = certified_kernel_moment(t, 2 * k, 1e-12 * want);
            const double e = rel_err(m.value, want, 0.0);
            worst_even = std::max(worst_even, e);
            c.expect(e <= 1e-8, fmt("t=%g k=%g rel err %.3g", t, k, e));
        }
        for (int order = 1; order <= 13; order += 2) {
            const auto m = certified_kernel_moment(t, order, 1e-12);
            worst_odd = std::max(worst_odd, std::abs(m.value));
            c.expect(std::abs(m.value) <= 1e-8, fmt("t=%g odd order %g = %.3g", t, order, m.value));
        }
    }
    c.note(fmt("max even rel err %.2e, max |odd| %.2e", worst_even, worst_odd));
}

// 4. Coefficient listing, root table, identities, interlacing.
void polynomial_tables(Checks& c) {
    const std::vector<std::vector<long long>> listed{
        {1},
        {0, 1},
        {0, 1, 3},
        {0, 1, 15, 15},
        {0, 1, 63, 210, 105},
        {0, 1, 225, 2205, 3150, 945},
        {0, 1, 1023, 21120, 65835, 51975, 10395},
    };
    // Reference zeros, from 0 downward.
    const std::vector<std::vector<double>> zeros{
        {0.0, -0.3333},
        {0.0, -0.0718, -0.9281},
        {0.0, -0.01680, -0.34615, -1.63703},
        {0.0, -0.00465, -0.11705, -0.80786, -2.40376},
        {0.0, -0.00099, -0.05743, -0.39502, -1.31451, -3.23203},
    };

    const auto p = moment_polynomials(10);
    for (int k = 0; k <= 6; ++k) {
        std::vector<BigInt> want(listed[static_cast<std::size_t>(k)].begin(),
                                 listed[static_cast<std::size_t>(k)].end());
        const bool equal = p[static_cast<std::size_t>(k)] == IntPolynomial(want);
        c.expect(equal, "p_" + std::to_string(k) + " = " + p[static_cast<std::size_t>(k)].to_string() +
                            " differs from the listed coefficients");
    }

    for (int k = 2; k <= 6; ++k) {
        const auto roots = poly_real_roots(p[static_cast<std::size_t>(k)], 1e-12);
        const auto& row = zeros[static_cast<std::size_t>(k - 2)];
        if (roots.size() != row.size()) {
            c.expect(false, "p_" + std::to_string(k) + " root count");
            continue;
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            const double got = roots[roots.size() - 1 - i];
            c.expect(trunc4(got) == trunc4(row[i]), "p_" + std::to_string(k) + " zero t_" + std::to_string(i) +
                                                        ": computed " + trunc4(got) + ", table " + trunc4(row[i]));
        }
    }

    BigInt double_factorial = 1;
    for (int k = 1; k <= 10; ++k) {
        double_factorial *= 2 * k - 1;
        const auto& q = p[static_cast<std::size_t>(k)];
        const BigInt four = BigInt(1) << (2 * (k - 1));
        c.expect(q.coeff(1) == 1, "a_{" + std::to_string(k) + ",1} != 1");
        if (k >= 2) c.expect(q.coeff(2) == four - 1, "a_{" + std::to_string(k) + ",2} != 4^{k-1}-1");
        c.expect(q.coeff(k) == double_factorial, "a_{" + std::to_string(k) + ",k} != (2k-1)!!");
    }

    std::vector<std::vector<double>> roots(7);
    for (int k = 2; k <= 6; ++k) roots[static_cast<std::size_t>(k)] = poly_real_roots(p[static_cast<std::size_t>(k)], 1e-12);
    for (int k = 2; k <= 6; ++k) {
        const auto& rk = roots[static_cast<std::size_t>(k)];
        for (int j = k + 1; j <= 6; ++j) {
            const auto& rj = roots[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i + 1 < rk.size(); ++i) {
                const auto inside = std::count_if(rj.begin(), rj.end(),
                                                  [&](double r) { return r > rk[i] && r < rk[i + 1]; });
                c.expect(inside >= 1, "interlacing p_" + std::to_string(k) + " / p_" + std::to_string(j));
            }
        }
    }
}

// 5. Fourier symbol.
void fourier_symbol(Checks& c) {
    for (double t : {1.0, 5.0}) {
        const double e = fourier_symbol_check(t, 64, 1e-12);
        c.expect(e <= 1e-10, fmt("t=%g max err %.3g", t, e));
        c.note(fmt("t=%g: max err %.2e", t, e));
    }
}

// 6. Kernel decay slopes.
void kernel_decay_slopes(Checks& c) {
    const auto g = grid();
    for (auto q : {KernelQuantity::kernel, KernelQuantity::gradient, KernelQuantity::laplacian}) {
        const double extra = q == KernelQuantity::kernel ? 0.0 : q == KernelQuantity::gradient ? 0.5 : 1.0;
        for (const auto& p : kExponents) {
            const auto r = kernel_decay(p, q, g);
            const double want = -0.5 * (1.0 - p.reciprocal()) - extra;
            const std::string name = std::string(to_string(q)) + " p=" + p.to_string();
            c.expect(r.has_fit() && std::abs(r.slope - want) <= 0.03,
                     name + fmt(" slope %.4f, expected %.4f", r.slope, want));
            c.note(name + fmt(": %.4f", r.slope));
        }
    }
    for (double t : g) {
        const auto k = heat_kernel(t, 1e-12);
        const double e = std::abs(lp_norm(k.sequence(), kL1) - 1.0);
        c.expect(e <= k.tail_mass + 1e-15, fmt("t=%g | ||G||_1 - 1 | = %.3g", t, e));
    }
}

// 7. l^2 decay rate and the sandwich band.
void l2_optimality_check(Checks& c) {
    std::mt19937_64 rng(7);
    LatticeSequence random = random_sequence(rng, 11, true);
    random *= 1.0 / random.sum();

    const std::vector<std::pair<std::string, LatticeSequence>> corpus{
        {"delta_0", LatticeSequence::delta(0)},
        {"delta_0 + delta_5", LatticeSequence::delta(0) + LatticeSequence::delta(5)},
        {"random 11-point", random},
    };
    const auto g = grid();
    for (const auto& [name, f] : corpus) {
        const auto r = l2_optimality(f, g);
        c.expect(std::abs(r.decay.slope + 0.25) <= 0.02, name + fmt(" slope %.4f", r.decay.slope));
        const double lower = 0.2 * std::abs(r.mass);
        const double upper = 0.8 * r.l1_norm;
        for (std::size_t i = 0; i < r.decay.pairs.size(); ++i) {
            const auto [t, v] = r.decay.pairs[i];
            const double scaled = v * std::pow(t, 0.25);
            c.expect(scaled >= lower && scaled <= upper,
                     name + fmt(" t=%g: t^(1/4)||u||_2 = %.4f outside band", t, scaled));
        }
        c.note(name + fmt(": slope %.4f", r.decay.slope));
    }
}

// Corpus shared by criteria 8 and 9.
std::vector<std::pair<std::string, LatticeSequence>> profile_corpus() {
    std::mt19937_64 rng(8);
    LatticeSequence random = random_sequence(rng, 7, false);
    while (std::abs(random.sum()) < 0.1) random = random_sequence(rng, 7, false);
    return {{"delta_3", LatticeSequence::delta(3)}, {"random 7-point", random}};
}

ForcingSpec profile_forcing() { return ForcingSpec::separable(LatticeSequence::delta(0), 2.0, 1.0); }

// 8. Large-time profiles.
void large_time(Checks& c) {
    const auto g = grid();
    for (const auto& [name, f] : profile_corpus()) {
        for (const auto& p : kExponents) {
            const auto r = large_time_profile(f, ForcingSpec::none(), p, g);
            const std::string label = name + " p=" + p.to_string();
            c.expect(r.pairs.size() == g.size(), label + ": points dropped by error gating");
            c.expect(nonincreasing(r, 0), label + ": profile not decreasing");
            c.expect(std::abs(r.slope + 0.5) <= 0.05, label + fmt(" slope %.4f", r.slope));
            c.note(label + fmt(": %.4f", r.slope));
        }
    }
    const auto r = large_time_profile(LatticeSequence{}, profile_forcing(), kL2, g, 1e-10);
    const bool shrinks = r.pairs.size() == g.size() && r.pairs.back().second < 0.1 * r.pairs.front().second;
    c.expect(shrinks, "forced profile does not fall below a tenth of its first value");
    if (!r.pairs.empty()) {
        c.note(fmt("forced profile %.3g -> %.3g", r.pairs.front().second, r.pairs.back().second));
    }
}

// 9. Conservation laws and randomized semigroup properties.
void solver_conservation(Checks& c) {
    constexpr double kEps = 1e-12;
    for (const auto& [name, f] : profile_corpus()) {
        const auto f0 = conserved_quantities(evolve(f, 0.0, kEps));
        for (double t : grid()) {
            const auto q = conserved_quantities(evolve(f, t, kEps));
            const double scale = lp_norm(f, kL1);
            c.expect(rel_err(q.mass, f0.mass, scale) <= 1e-8, name + fmt(" t=%g mass", t));
            c.expect(rel_err(q.first_moment, f0.first_moment, scale) <= 1e-8, name + fmt(" t=%g first moment", t));
            const double second = f0.second_moment + 2.0 * t * f0.mass;
            c.expect(rel_err(q.second_moment, second, scale) <= 1e-8, name + fmt(" t=%g second moment", t));
        }
    }
    // Forced part with g = delta_0 (1 + s)^{-2}: mass t/(1+t), first moment 0,
    // second moment integral of 2(t - s)(1 + s)^{-2} = 2(t - log(1 + t)).
    for (double t : {16.0, 128.0, 1024.0}) {
        const auto q = conserved_quantities(duhamel(profile_forcing(), t, 1e-10));
        c.expect(rel_err(q.mass, t / (1.0 + t)) <= 1e-8, fmt("forced t=%g mass", t));
        c.expect(rel_err(q.first_moment, 0.0) <= 1e-8, fmt("forced t=%g first moment", t));
        c.expect(rel_err(q.second_moment, 2.0 * (t - std::log1p(t))) <= 1e-8, fmt("forced t=%g second moment", t));
    }

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> len(1, 21);
    std::uniform_real_distribution<double> time(0.1, 60.0);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    int failures_before = static_cast<int>(c.failures().size());
    for (int i = 0; i < 100; ++i) {
        const bool nonnegative = i % 2 == 0;
        const auto f = random_sequence(rng, len(rng), nonnegative);
        const auto h = random_sequence(rng, len(rng), false);
        const double t = time(rng);
        const double s = time(rng);
        const std::string tag = "case " + std::to_string(i);

        const auto u = evolve(f, t, kEps);
        for (const auto& p : kExponents) {
            c.expect(lp_norm(u.u, p) <= lp_norm(f, p) + u.trunc_error, tag + " contractivity p=" + p.to_string());
        }
        if (nonnegative) {
            const auto lowest = *std::min_element(u.u.values().begin(), u.u.values().end());
            c.expect(lowest >= -u.trunc_error, tag + " positivity");
        }
        const auto composed = evolve(u.u, s, kEps);
        const auto direct = evolve(f, t + s, kEps);
        const double budget = u.trunc_error + composed.trunc_error + direct.trunc_error;
        c.expect(lp_norm(composed.u - direct.u, kL1) <= 10.0 * budget + 1e-13, tag + " semigroup");

        const double a = coef(rng);
        const double b = coef(rng);
        const auto lhs = evolve(a * f + b * h, t, kEps);
        const auto uh = evolve(h, t, kEps);
        const double lin_budget = lhs.trunc_error + std::abs(a) * u.trunc_error + std::abs(b) * uh.trunc_error;
        c.expect(lp_norm(lhs.u - (a * u.u + b * uh.u), kL1) <= lin_budget + 1e-13, tag + " linearity");
    }
    c.note(std::to_string(100) + " randomized cases, " +
           std::to_string(static_cast<int>(c.failures().size()) - failures_before) + " property failures");
}

// 10. Continuum limit of the moment polynomials.
void continuum_ratio(Checks& c) {
    const auto p = moment_polynomials(4);
    const double t = 1e4;
    double factorial_k = 1.0;
    double factorial_2k = 1.0;
    for (int k = 0; k <= 4; ++k) {
        if (k > 0) {
            factorial_k *= k;
            factorial_2k *= (2.0 * k - 1.0) * (2.0 * k);
        }
        const double ratio = poly_eval(p[static_cast<std::size_t>(k)], 2.0 * t) * factorial_k /
                             (factorial_2k * std::pow(t, k));
        c.expect(ratio >= 0.99 && ratio <= 1.01, fmt("k=%g ratio %.6f", k, ratio));
        c.note(fmt("k=%g: %.6f", k, ratio));
    }
}

// 11. Higher-order differences.
void higher_differences(Checks& c, const std::filesystem::path& artifacts) {
    const auto g = grid();
    const auto first = higher_difference_decay(1, kL1, g);
    c.expect(std::abs(first.slope + 0.5) <= 0.03, fmt("order 1 p=1 slope %.4f", first.slope));
    const auto second = higher_difference_decay(2, kLinf, g);
    c.expect(std::abs(second.slope + 1.5) <= 0.03, fmt("order 2 p=inf slope %.4f", second.slope));

    const auto third = higher_difference_decay(3, kL1, g);
    c.expect(third.has_fit() && std::isfinite(third.slope), "order 3 report has no slope");
    std::filesystem::create_directories(artifacts);
    const auto csv = artifacts / "diffdecay_order3_p1.csv";
    write_text_atomic(csv, report_to_csv(third));
    write_text_atomic(sidecar_path(csv), report_sidecar(third));
    c.note(fmt("order 1: %.4f, order 2: %.4f, order 3 (experimental): %.4f", first.slope, second.slope,
               third.slope));
    c.note("order 3 report written to " + csv.string());
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Checks&)> body;
};

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path artifacts = "acceptance_artifacts";
    std::set<int> expected_failures;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--artifacts" && i + 1 < argc) {
            artifacts = argv[++i];
        } else if (arg == "--expect-fail" && i + 1 < argc) {
            expected_failures.insert(std::stoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: acceptance [--artifacts DIR] [--expect-fail N ...]\n");
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "Bessel oracle agreement", oracle_agreement},
        {2, "kernel mass conservation", mass_conservation},
        {3, "moment identities", moment_identities},
        {4, "moment polynomial tables", polynomial_tables},
        {5, "Fourier symbol", fourier_symbol},
        {6, "kernel decay slopes", kernel_decay_slopes},
        {7, "l2 optimality", l2_optimality_check},
        {8, "large-time profiles", large_time},
        {9, "solver conservation and properties", solver_conservation},
        {10, "continuum ratio", continuum_ratio},
        {11, "higher-order differences", [&](Checks& c) { higher_differences(c, artifacts); }},
    };

    int unexpected = 0;
    for (const auto& criterion : criteria) {
        Checks checks;
        try {
            criterion.body(checks);
        } catch (const std::exception& e) {
            checks.expect(false, std::string("exception: ") + e.what());
        }
        const bool expected_fail = expected_failures.count(criterion.id) > 0;
        const bool ok = checks.ok();
        const int failed = static_cast<int>(checks.failures().size());
        std::printf("[%s] %2d %s (%d/%d checks)%s\n", ok ? "PASS" : "FAIL", criterion.id, criterion.title,
                    checks.count() - failed, checks.count(),
                    expected_fail ? (ok ? " UNEXPECTED PASS" : " expected failure") : "");
        for (const auto& n : checks.notes()) std::printf("       %s\n", n.c_str());
        for (const auto& f : checks.failures()) std::printf("       failed: %s\n", f.c_str());
        if (ok == expected_fail) ++unexpected;
    }
    std::printf("%s\n", unexpected == 0 ? "acceptance: all results as expected" : "acceptance: unexpected results");
    return unexpected == 0 ? 0 : 1;
}
