#include "betaexp/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace betaexp {
namespace {

constexpr int kSmallPrimes[] = {2, 3, 5, 7, 11, 13};
constexpr double kRealImagTol = 1e-8;
constexpr int kMaxMultinacciOrder = 64;

// ---- polynomials over F_p, lowest degree first -------------------------------

using ModPoly = std::vector<std::int64_t>;

std::int64_t mod(std::int64_t a, std::int64_t p)
{
    const auto r = a % p;
    return r < 0 ? r + p : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p)
{
    // p is prime and small, so Fermat is fine.
    std::int64_t result = 1;
    std::int64_t base = mod(a, p);
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return result;
}

void trim(ModPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly poly_mod(ModPoly a, const ModPoly& m, std::int64_t p)
{
    trim(a);
    const auto inv_lead = inverse_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const auto factor = a.back() * inv_lead % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[shift + i] = mod(a[shift + i] - factor * m[i], p);
        }
        trim(a);
    }
    return a;
}

ModPoly mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::int64_t p)
{
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
    }
    return poly_mod(std::move(c), m, p);
}

ModPoly pow_mod(ModPoly base, std::int64_t e, const ModPoly& m, std::int64_t p)
{
    ModPoly result{1};
    base = poly_mod(std::move(base), m, p);
    for (; e > 0; e >>= 1) {
        if (e & 1) result = mul_mod(result, base, m, p);
        base = mul_mod(base, base, m, p);
    }
    return result;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, std::int64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<int> prime_factors(int n)
{
    std::vector<int> out;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// x^{p^i} mod f by repeated p-th powers.
ModPoly frobenius_power(const ModPoly& f, int i, std::int64_t p)
{
    ModPoly h{0, 1};
    for (int k = 0; k < i; ++k) {
        h = pow_mod(h, p, f, p);
    }
    return h;
}

ModPoly minus_x(ModPoly h, std::int64_t p)
{
    if (h.size() < 2) h.resize(2, 0);
    h[1] = mod(h[1] - 1, p);
    trim(h);
    return h;
}

// ---- integer polynomial helpers ---------------------------------------------

std::optional<std::vector<std::int64_t>> round_to_integers(const std::vector<std::complex<double>>& c)
{
    std::vector<std::int64_t> out;
    out.reserve(c.size());
    for (const auto& z : c) {
        const double r = std::round(z.real());
        if (std::abs(z.imag()) > 1e-6 || std::abs(z.real() - r) > 1e-6 || std::abs(r) > 1e15) {
            return std::nullopt;
        }
        out.push_back(static_cast<std::int64_t>(r));
    }
    return out;
}

// Monic product Π (x - r_i), leading coefficient first.
std::vector<std::complex<double>> monic_from_roots(const std::vector<std::complex<double>>& roots)
{
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i) {
            c[i] -= r * c[i - 1];
        }
    }
    return c;
}

// Looks for a monic integer factor of degree 1..3 assembled from computed roots.
bool has_small_factor(const IntegerPolynomial& p, const std::vector<std::complex<double>>& roots)
{
    const int d = p.degree();
    const int max_k = std::min(3, d - 1);
    for (int k = 1; k <= max_k; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<std::complex<double>> subset;
            for (const int i : idx) subset.push_back(roots[static_cast<std::size_t>(i)]);
            if (const auto coeffs = round_to_integers(monic_from_roots(subset))) {
                if (divides(IntegerPolynomial(*coeffs), p)) {
                    return true;
                }
            }
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return false;
}

std::complex<double> polish(const IntegerPolynomial& p, const IntegerPolynomial& dp, std::complex<double> z)
{
    for (int iter = 0; iter < 50; ++iter) {
        const auto fz = p.evaluate(z);
        const auto dfz = dp.evaluate(z);
        if (std::abs(dfz) == 0.0) break;
        const auto step = fz / dfz;
        const auto candidate = z - step;
        if (!(std::abs(p.evaluate(candidate)) < std::abs(fz))) break;
        z = candidate;
        if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

} // namespace

const char* to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(Irreducibility v) noexcept
{
    switch (v) {
    case Irreducibility::yes: return "yes";
    case Irreducibility::no: return "no";
    case Irreducibility::unknown: return "unknown";
    }
    return "?";
}

std::vector<std::complex<double>> polynomial_roots(const IntegerPolynomial& p)
{
    const int d = p.degree();
    if (d < 1) {
        return {};
    }
    const auto& c = p.coefficients();
    const double lead = static_cast<double>(c.front());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < d; ++i) {
        // Last column holds -c_{d-i}/c_0 for the x^i coefficient.
        companion(i, d - 1) = -static_cast<double>(c[static_cast<std::size_t>(d - i)]) / lead;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto dp = p.derivative();
    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        auto z = polish(p, dp, solver.eigenvalues()[i]);
        if (std::abs(z.imag()) <= kRealImagTol * std::max(1.0, std::abs(z.real()))) {
            z = {z.real(), 0.0};
        }
        roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

bool irreducible_mod_prime(const IntegerPolynomial& poly, int prime)
{
    const std::int64_t p = prime;
    if (mod(poly.leading(), p) == 0) {
        throw DomainError("prime divides the leading coefficient");
    }
    const int d = poly.degree();
    if (d <= 1) {
        return d == 1;
    }
    ModPoly f;
    const auto& c = poly.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        f.push_back(mod(*it, p));
    }
    // Rabin: x^{p^d} = x mod f, and gcd(x^{p^{d/q}} - x, f) = 1 for every prime q | d.
    if (!minus_x(frobenius_power(f, d, p), p).empty()) {
        return false;
    }
    for (const int q : prime_factors(d)) {
        const auto g = poly_gcd(f, minus_x(frobenius_power(f, d / q, p), p), p);
        if (g.size() != 1) {
            return false;
        }
    }
    return true;
}

__extension__ typedef __int128 wide_int;

bool divides(const IntegerPolynomial& divisor, const IntegerPolynomial& dividend)
{
    if (!divisor.is_monic()) {
        throw DomainError("divides() needs a monic divisor");
    }
    if (divisor.degree() > dividend.degree()) {
        return false;
    }
    std::vector<wide_int> rem(dividend.coefficients().begin(), dividend.coefficients().end());
    const auto& g = divisor.coefficients();
    constexpr wide_int kLimit = static_cast<wide_int>(1) << 100;
    for (std::size_t i = 0; i + g.size() <= rem.size(); ++i) {
        const wide_int q = rem[i];
        if (q == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            rem[i + j] -= q * g[j];
            if (rem[i + j] > kLimit || rem[i + j] < -kLimit) {
                return false;  // quotient blew up; certainly not a small exact factor
            }
        }
    }
    return std::all_of(rem.end() - static_cast<std::ptrdiff_t>(g.size() - 1), rem.end(),
                       [](wide_int v) { return v == 0; });
}

Classification classify(const IntegerPolynomial& p, const ToleranceConfig& tol)
{
    tol.validate();
    if (p.degree() < 1) {
        throw DomainError("classification needs degree >= 1");
    }
    if (!p.is_monic()) {
        throw DomainError("classification needs a monic polynomial, got " + p.to_string());
    }
    const double margin = tol.root_margin;
    Classification cls;
    cls.polynomial = p;
    cls.roots = polynomial_roots(p);
    for (const auto& r : cls.roots) {
        cls.max_residual = std::max(cls.max_residual, std::abs(p.evaluate(r)));
    }
    const bool roots_trusted = cls.max_residual <= 1e-9 * (p.degree() + 1);

    // Reference root: largest real root in (1,2), else largest real root > 1.
    std::optional<std::size_t> ref;
    for (std::size_t i = 0; i < cls.roots.size(); ++i) {
        const auto& r = cls.roots[i];
        if (r.imag() != 0.0 || !(r.real() > 1.0)) continue;
        const bool in_band = r.real() < 2.0;
        if (!ref) {
            ref = i;
            continue;
        }
        const double cur = cls.roots[*ref].real();
        const bool cur_in_band = cur < 2.0;
        if ((in_band && !cur_in_band) || (in_band == cur_in_band && r.real() > cur)) {
            ref = i;
        }
    }
    if (ref) {
        cls.reference_root = cls.roots[*ref].real();
        if (*cls.reference_root < 2.0) cls.root_in_unit_band = cls.reference_root;
        for (std::size_t i = 0; i < cls.roots.size(); ++i) {
            if (i != *ref) cls.conjugate_moduli.push_back(std::abs(cls.roots[i]));
        }
    }

    // Irreducibility: certificate mod a small prime, or a small factor.
    cls.irreducible = Irreducibility::unknown;
    for (const int prime : kSmallPrimes) {
        if (irreducible_mod_prime(p, prime)) {
            cls.irreducible = Irreducibility::yes;
            cls.irreducible_mod = prime;
            break;
        }
    }
    if (cls.irreducible == Irreducibility::unknown && p.degree() >= 2 && has_small_factor(p, cls.roots)) {
        cls.irreducible = Irreducibility::no;
    }

    for (int k = std::max(1, p.degree() - 1); k <= kMaxMultinacciOrder; ++k) {
        if (divides(p, IntegerPolynomial::multinacci(k)) && cls.root_in_unit_band) {
            cls.multinacci_order = k;
            break;
        }
    }

    const bool any_below = std::any_of(cls.conjugate_moduli.begin(), cls.conjugate_moduli.end(),
                                       [&](double m) { return m < 1.0 - margin; });
    const bool any_above = std::any_of(cls.conjugate_moduli.begin(), cls.conjugate_moduli.end(),
                                       [&](double m) { return m > 1.0 + margin; });
    const bool any_in_band = std::any_of(cls.conjugate_moduli.begin(), cls.conjugate_moduli.end(),
                                         [&](double m) { return std::abs(m - 1.0) <= margin; });

    // Garsia: norm ±2, root in (1,2), every conjugate strictly outside the unit circle.
    const auto c0 = p.constant_term();
    if (c0 != 2 && c0 != -2) {
        cls.garsia = Verdict::no;
    } else if (!cls.root_in_unit_band || *cls.root_in_unit_band <= 1.0 + margin) {
        cls.garsia = cls.root_in_unit_band ? Verdict::indeterminate : Verdict::no;
    } else if (any_below) {
        cls.garsia = Verdict::no;
    } else if (any_in_band || !roots_trusted) {
        cls.garsia = Verdict::indeterminate;
    } else if (cls.irreducible == Irreducibility::yes) {
        cls.garsia = Verdict::yes;
    } else {
        cls.garsia = cls.irreducible == Irreducibility::no ? Verdict::no : Verdict::indeterminate;
    }

    // Pisot: a real root > 1 with every other root strictly inside the unit disk.
    if (!cls.reference_root) {
        cls.pisot = Verdict::no;
    } else if (*cls.reference_root <= 1.0 + margin || any_in_band || !roots_trusted) {
        cls.pisot = Verdict::indeterminate;
    } else if (!any_above) {
        cls.pisot = Verdict::yes;
    } else {
        // Another root outside the disk rules the number out only if p is its minimal polynomial.
        cls.pisot = cls.irreducible == Irreducibility::yes ? Verdict::no : Verdict::indeterminate;
    }
    return cls;
}

double multinacci_value(int k, double precision)
{
    if (k < 1) {
        throw DomainError("multinacci order must be >= 1");
    }
    if (!(precision > 0.0)) {
        throw DomainError("precision must be positive");
    }
    // On (1,2) the root solves (2 - x) = x^{-(k+1)}; h > 0 at 1.5 and < 0 at 2.
    const auto h = [k](double x) { return (2.0 - x) - std::pow(x, -(k + 1.0)); };
    double lo = 1.5;
    double hi = 2.0;
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    // Newton polish on x^{k+2} - 2x^{k+1} + 1, kept inside the bracket.
    for (int iter = 0; iter < 8; ++iter) {
        const double xk = std::pow(x, k + 1.0);
        const double f = xk * (x - 2.0) + 1.0;
        const double df = xk * ((k + 2.0) - 2.0 * (k + 1.0) / x);
        if (df == 0.0) break;
        const double next = x - f / df;
        if (!(next > lo - precision && next < hi + precision)) break;
        x = next;
    }
    return x;
}

BaseValue multinacci_base(int k)
{
    return BaseValue(multinacci_value(k), PolynomialRoot{IntegerPolynomial::multinacci(k), 0});
}

int thue_morse(unsigned long long n) noexcept
{
    return std::popcount(n) & 1;
}

double komornik_loreti_residual(double beta, double cutoff)
{
    double sum = 0.0;
    double p = 1.0;
    for (unsigned long long n = 1;; ++n) {
        p /= beta;
        if (p < cutoff) break;
        if (thue_morse(n)) sum += p;
    }
    return sum - 1.0;
}

double komornik_loreti(double precision)
{
    if (!(precision >= 1e-12)) {
        throw DomainError("komornik_loreti supports precision >= 1e-12");
    }
    const double cutoff = precision / 10.0;
    double lo = (1.0 + std::sqrt(5.0)) / 2.0;  // residual > 0
    double hi = 2.0;                           // residual < 0
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        (komornik_loreti_residual(mid, cutoff) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace betaexp
