#pragma once

#include <optional>

#include "betaexp/errors.hpp"
#include "betaexp/polynomial.hpp"

namespace betaexp {

/// Records that a base was obtained as a root of an integer polynomial.
struct PolynomialRoot {
    IntegerPolynomial polynomial;
    int root_index = 0;  // index among the real roots in (1,2), ascending
};

/// A base β in the open interval (1,2).
class BaseValue {
public:
    /// Throws DomainError unless 1 < value < 2.
    explicit BaseValue(double value);

    /// Throws DomainError unless 1 < value < 2 and |p(value)| < 1e-9.
    BaseValue(double value, PolynomialRoot provenance);

    double value() const noexcept { return value_; }
    const std::optional<PolynomialRoot>& provenance() const noexcept { return provenance_; }

    /// Right endpoint of I_β = [0, 1/(β-1)].
    double interval_length() const noexcept { return 1.0 / (value_ - 1.0); }

private:
    double value_;
    std::optional<PolynomialRoot> provenance_;
};

} // namespace betaexp
