#include "betaexp/base.hpp"

#include <cmath>
#include <string>

namespace betaexp {

BaseValue::BaseValue(double value) : value_(value)
{
    if (!(value > 1.0 && value < 2.0)) {
        throw DomainError("base must lie in (1,2), got " + std::to_string(value));
    }
}

BaseValue::BaseValue(double value, PolynomialRoot provenance)
    : BaseValue(value)
{
    if (!(std::abs(provenance.polynomial.evaluate(value)) < 1e-9)) {
        throw DomainError("base is not a root of " + provenance.polynomial.to_string());
    }
    provenance_ = std::move(provenance);
}

} // namespace betaexp
