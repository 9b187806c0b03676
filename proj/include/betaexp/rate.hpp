#pragma once

#include <string>
#include <variant>
#include <vector>

#include "betaexp/errors.hpp"

namespace betaexp {

/// The sequence (ω_n) that multiplies 2^{-n} in scaled rate functions.
class RateSequence {
public:
    struct Log {};  // ω_n = max(log n, 1)
    struct Linear {};  // ω_n = n
    struct Constant { double c; };
    struct Table { std::vector<double> values; };  // values[0] is ω_1
    using Kind = std::variant<Log, Linear, Constant, Table>;

    static constexpr int kUnboundedHorizon = 1 << 30;

    static RateSequence log(int horizon = kUnboundedHorizon);
    static RateSequence linear(int horizon = kUnboundedHorizon);
    static RateSequence constant(double c, int horizon = kUnboundedHorizon);
    static RateSequence table(std::vector<double> values);

    double operator()(int n) const;
    int horizon() const noexcept { return horizon_; }
    const Kind& kind() const noexcept { return kind_; }
    std::string describe() const;

private:
    RateSequence(Kind kind, int horizon);

    Kind kind_;
    int horizon_;
};

/// Approximation function Ψ: N -> [0, ∞).
class RateFunction {
public:
    struct Power { double alpha; };  // 2^{-nα}
    struct Scaled { RateSequence omega; };  // ω_n 2^{-n}
    struct Geometric { double beta; };  // β^{-n}
    struct Table { std::vector<double> values; };  // values[0] is Ψ(1)
    struct Zero {};
    using Kind = std::variant<Power, Scaled, Geometric, Table, Zero>;

    static RateFunction power(double alpha);
    static RateFunction scaled(RateSequence omega);
    static RateFunction geometric(double beta);
    static RateFunction table(std::vector<double> values);
    static RateFunction zero();

    /// Parses "power:2", "scaled:log", "scaled:linear", "scaled:const:5",
    /// "scaled:table:1,2,3", "geometric:1.7", "table:0.1,0.05", "zero".
    /// A bare "geometric" takes `default_beta`.
    static RateFunction parse(const std::string& text, double default_beta = 0.0);

    const Kind& kind() const noexcept { return kind_; }
    bool is_power() const noexcept { return std::holds_alternative<Power>(kind_); }
    std::string describe() const;

private:
    explicit RateFunction(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

/// Ψ(n).  Throws DomainError for n < 1, RangeError past a table's end.
double eval_rate(const RateFunction& psi, int n);

/// Smallest K with ω(n+m)/ω(n) >= 1/K for all 1 <= n <= N, i.e.
/// max_n ω(n)/ω(n+m).  Throws RangeError if N + m exceeds the horizon.
double growing_regularity_profile(const RateSequence& omega, int m, int horizon_n);

enum class SeriesVerdict { convergent, divergent, indeterminate };

struct SeriesClassification {
    SeriesVerdict verdict;
    double partial_sum;  // Σ_{n=1}^{N} 2^n Ψ(n)^s
    int terms;
};

/// Verdict on Σ 2^n Ψ(n)^s.  Exact for the power kind (divergent iff s <= 1/α);
/// other kinds report indeterminate together with the partial sum.
SeriesClassification classify_series(const RateFunction& psi, double s, int terms);

const char* to_string(SeriesVerdict v) noexcept;

} // namespace betaexp
