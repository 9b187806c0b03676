#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace betaexp {

/// Polynomial with integer coefficients, leading coefficient first.
/// {1, 0, -2} is x^2 - 2.
class IntegerPolynomial {
public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<std::int64_t> coefficients);

    /// Parses a comma-separated coefficient list such as "1,0,-2".
    static IntegerPolynomial parse(std::string_view text);

    /// x^{k+1} - x^k - ... - x - 1.
    static IntegerPolynomial multinacci(int k);

    const std::vector<std::int64_t>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::int64_t leading() const noexcept { return coeffs_.front(); }
    std::int64_t constant_term() const noexcept { return coeffs_.back(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.front() == 1; }

    double evaluate(double x) const noexcept;
    std::complex<double> evaluate(std::complex<double> z) const noexcept;
    IntegerPolynomial derivative() const;

    std::string to_string() const;

    friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

private:
    std::vector<std::int64_t> coeffs_;
};

} // namespace betaexp
