#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "betaexp/base.hpp"
#include "betaexp/polynomial.hpp"
#include "betaexp/tolerance.hpp"

namespace betaexp {

enum class Verdict { yes, no, indeterminate };
enum class Irreducibility { yes, no, unknown };

const char* to_string(Verdict v) noexcept;
const char* to_string(Irreducibility v) noexcept;

struct Classification {
    IntegerPolynomial polynomial;
    std::vector<std::complex<double>> roots;
    double max_residual = 0.0;
    std::optional<double> root_in_unit_band;   // largest real root in (1,2)
    std::optional<double> reference_root;      // root_in_unit_band, else largest real root > 1
    std::vector<double> conjugate_moduli;      // moduli of the other roots
    std::optional<int> multinacci_order;
    Irreducibility irreducible = Irreducibility::unknown;
    std::optional<int> irreducible_mod;        // a prime certifying irreducibility
    Verdict garsia = Verdict::indeterminate;
    Verdict pisot = Verdict::indeterminate;
};

/// All complex roots of a polynomial with nonzero leading coefficient.
std::vector<std::complex<double>> polynomial_roots(const IntegerPolynomial& p);

/// Irreducible over F_p (Rabin's test).  p must not divide the leading coefficient.
bool irreducible_mod_prime(const IntegerPolynomial& poly, int p);

/// Exact division test by a monic divisor over the integers.
bool divides(const IntegerPolynomial& divisor, const IntegerPolynomial& dividend);

/// Multinacci / Garsia / Pisot classification of a monic integer polynomial.
Classification classify(const IntegerPolynomial& p, const ToleranceConfig& tol = {});

/// Root in (1,2) of x^{k+1} = x^k + ... + x + 1.
double multinacci_value(int k, double precision = 1e-15);

/// The multinacci number as a base with polynomial provenance.
BaseValue multinacci_base(int k);

/// Parity of the binary digit sum of n (t_1 = 1, t_2 = 1, t_3 = 0, ...).
int thue_morse(unsigned long long n) noexcept;

/// Σ_{n>=1} t_n β^{-n} - 1, truncated once β^{-n} < cutoff.
double komornik_loreti_residual(double beta, double cutoff);

/// Root in (1,2) of Σ t_n β^{-n} = 1.  DomainError for precision < 1e-12.
double komornik_loreti(double precision = 1e-10);

} // namespace betaexp
