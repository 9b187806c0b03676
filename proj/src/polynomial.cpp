#include "betaexp/polynomial.hpp"

#include <charconv>
#include <sstream>

#include "betaexp/errors.hpp"

namespace betaexp {

IntegerPolynomial::IntegerPolynomial(std::vector<std::int64_t> coefficients)
    : coeffs_(std::move(coefficients))
{
    std::size_t first = 0;
    while (first + 1 < coeffs_.size() && coeffs_[first] == 0) {
        ++first;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    if (coeffs_.empty()) {
        throw DomainError("polynomial needs at least one coefficient");
    }
}

IntegerPolynomial IntegerPolynomial::parse(std::string_view text)
{
    std::vector<std::int64_t> coeffs;
    while (!text.empty()) {
        const auto comma = text.find(',');
        auto token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (!token.empty() && token.front() == '+') token.remove_prefix(1);
        std::int64_t c = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), c);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw DomainError("invalid polynomial coefficient '" + std::string(token) + "'");
        }
        coeffs.push_back(c);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return IntegerPolynomial(std::move(coeffs));
}

IntegerPolynomial IntegerPolynomial::multinacci(int k)
{
    if (k < 1) {
        throw DomainError("multinacci order must be >= 1");
    }
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(k) + 2, -1);
    coeffs.front() = 1;
    return IntegerPolynomial(std::move(coeffs));
}

double IntegerPolynomial::evaluate(double x) const noexcept
{
    double acc = 0.0;
    for (const auto c : coeffs_) {
        acc = acc * x + static_cast<double>(c);
    }
    return acc;
}

std::complex<double> IntegerPolynomial::evaluate(std::complex<double> z) const noexcept
{
    std::complex<double> acc{0.0, 0.0};
    for (const auto c : coeffs_) {
        acc = acc * z + static_cast<double>(c);
    }
    return acc;
}

IntegerPolynomial IntegerPolynomial::derivative() const
{
    if (degree() == 0) {
        return IntegerPolynomial({0});
    }
    std::vector<std::int64_t> d;
    d.reserve(coeffs_.size() - 1);
    for (int i = 0; i < degree(); ++i) {
        d.push_back(coeffs_[static_cast<std::size_t>(i)] * (degree() - i));
    }
    return IntegerPolynomial(std::move(d));
}

std::string IntegerPolynomial::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        const auto c = coeffs_[static_cast<std::size_t>(i)];
        const int power = degree() - i;
        if (c == 0) {
            continue;
        }
        const auto mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (mag != 1 || power == 0) out << mag;
        if (power >= 1) out << 'x';
        if (power >= 2) out << '^' << power;
        first = false;
    }
    return first ? "0" : out.str();
}

} // namespace betaexp
