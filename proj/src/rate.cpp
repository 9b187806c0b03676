#include "betaexp/rate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace betaexp {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw DomainError("trailing characters");
            }
        } catch (const std::exception&) {
            throw DomainError("invalid number '" + item + "' in list");
        }
    }
    if (values.empty()) {
        throw DomainError("empty list");
    }
    return values;
}

double parse_number(const std::string& text)
{
    const auto values = parse_list(text);
    if (values.size() != 1) {
        throw DomainError("expected a single number, got '" + text + "'");
    }
    return values.front();
}

} // namespace

RateSequence::RateSequence(Kind kind, int horizon) : kind_(std::move(kind)), horizon_(horizon)
{
    if (horizon_ < 1) {
        throw DomainError("rate sequence horizon must be positive");
    }
}

RateSequence RateSequence::log(int horizon) { return {Log{}, horizon}; }
RateSequence RateSequence::linear(int horizon) { return {Linear{}, horizon}; }

RateSequence RateSequence::constant(double c, int horizon)
{
    if (!(c > 0.0)) {
        throw DomainError("constant rate sequence needs c > 0");
    }
    return {Constant{c}, horizon};
}

RateSequence RateSequence::table(std::vector<double> values)
{
    if (values.empty()) {
        throw DomainError("rate sequence table is empty");
    }
    if (std::any_of(values.begin(), values.end(), [](double v) { return !(v > 0.0); })) {
        throw DomainError("rate sequence terms must be positive");
    }
    const int horizon = static_cast<int>(values.size());
    return {Table{std::move(values)}, horizon};
}

double RateSequence::operator()(int n) const
{
    if (n < 1) {
        throw DomainError("rate sequence index must be >= 1");
    }
    if (n > horizon_) {
        throw RangeError("rate sequence index " + std::to_string(n) + " beyond horizon " +
                         std::to_string(horizon_));
    }
    return std::visit(overloaded{
                          [n](const Log&) { return std::max(std::log(static_cast<double>(n)), 1.0); },
                          [n](const Linear&) { return static_cast<double>(n); },
                          [](const Constant& k) { return k.c; },
                          [n](const Table& t) { return t.values[static_cast<std::size_t>(n - 1)]; },
                      },
                      kind_);
}

std::string RateSequence::describe() const
{
    return std::visit(overloaded{
                          [](const Log&) { return std::string("log"); },
                          [](const Linear&) { return std::string("linear"); },
                          [](const Constant& k) {
                              std::ostringstream s;
                              s.precision(17);
                              s << "const:" << k.c;
                              return s.str();
                          },
                          [](const Table& t) {
                              std::ostringstream s;
                              s.precision(17);
                              s << "table:";
                              for (std::size_t i = 0; i < t.values.size(); ++i) {
                                  s << (i ? "," : "") << t.values[i];
                              }
                              return s.str();
                          },
                      },
                      kind_);
}

RateFunction RateFunction::power(double alpha)
{
    if (!(alpha > 1.0)) {
        throw DomainError("power rate needs alpha > 1");
    }
    return RateFunction(Power{alpha});
}

RateFunction RateFunction::scaled(RateSequence omega) { return RateFunction(Scaled{std::move(omega)}); }

RateFunction RateFunction::geometric(double beta)
{
    if (!(beta > 1.0)) {
        throw DomainError("geometric rate needs beta > 1");
    }
    return RateFunction(Geometric{beta});
}

RateFunction RateFunction::table(std::vector<double> values)
{
    if (values.empty()) {
        throw DomainError("rate table is empty");
    }
    if (std::any_of(values.begin(), values.end(), [](double v) { return !(v >= 0.0); })) {
        throw DomainError("rate table entries must be nonnegative");
    }
    return RateFunction(Table{std::move(values)});
}

RateFunction RateFunction::zero() { return RateFunction(Zero{}); }

RateFunction RateFunction::parse(const std::string& text, double default_beta)
{
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string{} : text.substr(colon + 1);

    if (head == "zero" && rest.empty()) {
        return zero();
    }
    if (head == "power") {
        return power(parse_number(rest));
    }
    if (head == "geometric") {
        return geometric(rest.empty() ? default_beta : parse_number(rest));
    }
    if (head == "table") {
        return table(parse_list(rest));
    }
    if (head == "scaled") {
        if (rest == "log") return scaled(RateSequence::log());
        if (rest == "linear") return scaled(RateSequence::linear());
        if (rest.rfind("const:", 0) == 0) return scaled(RateSequence::constant(parse_number(rest.substr(6))));
        if (rest.rfind("table:", 0) == 0) return scaled(RateSequence::table(parse_list(rest.substr(6))));
    }
    throw DomainError("unrecognised rate function '" + text + "'");
}

std::string RateFunction::describe() const
{
    std::ostringstream s;
    s.precision(17);
    std::visit(overloaded{
                   [&](const Power& p) { s << "power:" << p.alpha; },
                   [&](const Scaled& sc) { s << "scaled:" << sc.omega.describe(); },
                   [&](const Geometric& g) { s << "geometric:" << g.beta; },
                   [&](const Table& t) {
                       s << "table:";
                       for (std::size_t i = 0; i < t.values.size(); ++i) {
                           s << (i ? "," : "") << t.values[i];
                       }
                   },
                   [&](const Zero&) { s << "zero"; },
               },
               kind_);
    return s.str();
}

double eval_rate(const RateFunction& psi, int n)
{
    if (n < 1) {
        throw DomainError("rate functions are defined for n >= 1");
    }
    return std::visit(overloaded{
                          [n](const RateFunction::Power& p) {
                              return static_cast<double>(std::exp2(-static_cast<long double>(p.alpha) * n));
                          },
                          [n](const RateFunction::Scaled& sc) { return std::ldexp(sc.omega(n), -n); },
                          [n](const RateFunction::Geometric& g) { return std::pow(g.beta, -n); },
                          [n](const RateFunction::Table& t) {
                              if (static_cast<std::size_t>(n) > t.values.size()) {
                                  throw RangeError("rate table has no entry for n = " + std::to_string(n));
                              }
                              return t.values[static_cast<std::size_t>(n - 1)];
                          },
                          [](const RateFunction::Zero&) { return 0.0; },
                      },
                      psi.kind());
}

double growing_regularity_profile(const RateSequence& omega, int m, int horizon_n)
{
    if (m < 1 || horizon_n < 1) {
        throw DomainError("growing regularity profile needs m >= 1 and N >= 1");
    }
    if (static_cast<long long>(horizon_n) + m > omega.horizon()) {
        throw RangeError("N + m exceeds the rate sequence horizon");
    }
    double k = 0.0;
    for (int n = 1; n <= horizon_n; ++n) {
        k = std::max(k, omega(n) / omega(n + m));
    }
    return k;
}

SeriesClassification classify_series(const RateFunction& psi, double s, int terms)
{
    if (!(s > 0.0)) {
        throw DomainError("series exponent s must be positive");
    }
    if (terms < 0) {
        throw DomainError("number of terms must be nonnegative");
    }
    double partial = 0.0;
    for (int n = 1; n <= terms; ++n) {
        partial += std::ldexp(std::pow(eval_rate(psi, n), s), n);
    }
    if (const auto* p = std::get_if<RateFunction::Power>(&psi.kind())) {
        // Terms are 2^{n(1-αs)}: a geometric series with ratio 2^{1-αs}.
        const auto verdict = s <= 1.0 / p->alpha ? SeriesVerdict::divergent : SeriesVerdict::convergent;
        return {verdict, partial, terms};
    }
    return {SeriesVerdict::indeterminate, partial, terms};
}

const char* to_string(SeriesVerdict v) noexcept
{
    switch (v) {
    case SeriesVerdict::convergent: return "convergent";
    case SeriesVerdict::divergent: return "divergent";
    case SeriesVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

} // namespace betaexp
