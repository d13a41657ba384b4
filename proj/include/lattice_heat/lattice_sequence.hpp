#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lattice_heat {

/// A finitely supported real sequence on the integers.
///
/// Values are carried on the window [first(), last()]; every index outside
/// it reads as zero. Binary operations align windows by index.
class LatticeSequence {
public:
    LatticeSequence() = default;
    LatticeSequence(int offset, std::vector<double> values, std::optional<std::string> name = std::nullopt);

    /// weight * delta_at
    static LatticeSequence delta(int at, double weight = 1.0);
    /// Zeros on [first, last].
    static LatticeSequence zeros(int first, int last);

    [[nodiscard]] int offset() const noexcept { return offset_; }
    [[nodiscard]] int first() const noexcept { return offset_; }
    [[nodiscard]] int last() const noexcept { return offset_ + static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

    [[nodiscard]] double operator[](int n) const noexcept;
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> mutable_values() noexcept { return values_; }

    [[nodiscard]] const std::optional<std::string>& name() const noexcept { return name_; }
    void set_name(std::optional<std::string> name) { name_ = std::move(name); }

    /// Copy carried on [first, last] (zero-extended or cut).
    [[nodiscard]] LatticeSequence windowed(int first, int last) const;

    /// Sum of the carried values (compensated, index order).
    [[nodiscard]] double sum() const noexcept;

    LatticeSequence& operator+=(const LatticeSequence& other);
    LatticeSequence& operator-=(const LatticeSequence& other);
    LatticeSequence& operator*=(double factor) noexcept;

    friend bool operator==(const LatticeSequence& a, const LatticeSequence& b) noexcept {
        return a.offset_ == b.offset_ && a.values_ == b.values_;
    }

private:
    void accumulate(const LatticeSequence& other, double sign);

    int offset_ = 0;
    std::vector<double> values_;
    std::optional<std::string> name_;
};

[[nodiscard]] LatticeSequence operator+(LatticeSequence a, const LatticeSequence& b);
[[nodiscard]] LatticeSequence operator-(LatticeSequence a, const LatticeSequence& b);
[[nodiscard]] LatticeSequence operator*(double factor, LatticeSequence a);

/// Exponent p of an l^p norm; infinity is a distinguished value.
class LpExponent {
public:
    static LpExponent finite(double p);
    static LpExponent infinity() noexcept { return LpExponent(0.0, true); }
    /// Accepts "inf" or a decimal number >= 1.
    static LpExponent parse(const std::string& text);

    [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
    /// p as a double; +inf for the infinite exponent.
    [[nodiscard]] double value() const noexcept;
    /// 1/p, zero for p = infinity.
    [[nodiscard]] double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / p_; }
    [[nodiscard]] std::string to_string() const;

private:
    LpExponent(double p, bool infinite) : p_(p), infinite_(infinite) {}
    double p_;
    bool infinite_;
};

/// (sum |s_n|^p)^{1/p}, or max |s_n| for p = infinity, over the carried window.
[[nodiscard]] double lp_norm(const LatticeSequence& s, LpExponent p);

/// f(n+1) - f(n); the window grows by one on the left.
[[nodiscard]] LatticeSequence forward_difference(const LatticeSequence& s);

/// f(n+1) - 2 f(n) + f(n-1); the window grows by one on each side.
[[nodiscard]] LatticeSequence discrete_laplacian(const LatticeSequence& s);

}  // namespace lattice_heat
