#include "vslab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace vslab {

Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

std::vector<Int> binomial_row(std::uint64_t n) {
    std::vector<Int> row(n + 1);
    row[0] = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
        row[k + 1] = row[k] * Int(n - k);
        mpz_divexact_ui(row[k + 1].get_mpz_t(), row[k + 1].get_mpz_t(), k + 1);
    }
    return row;
}

Int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    Int c = 1;
    if (k > n - k) k = n - k;
    for (std::uint64_t i = 0; i < k; ++i) {
        c *= Int(n - i);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i + 1);
    }
    return c;
}

Int falling_factorial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;  // the factor (n - n) appears
    Int f = 1;
    for (std::uint64_t i = 0; i < k; ++i) f *= Int(n - i);
    return f;
}

Int int_pow(std::uint64_t base, std::uint64_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

Rat rat_pow(const Rat& base, std::uint64_t e) {
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    return make_rat(std::move(num), std::move(den));
}

double rat_to_double(const Rat& x) { return x.get_d(); }

double rat_log(const Rat& x) {
    if (sgn(x) <= 0) throw std::domain_error("rat_log: nonpositive argument");
    signed long ne = 0, de = 0;
    double nm = mpz_get_d_2exp(&ne, x.get_num_mpz_t());
    double dm = mpz_get_d_2exp(&de, x.get_den_mpz_t());
    return std::log(nm) - std::log(dm) + std::log(2.0) * (double(ne) - double(de));
}

}  // namespace vslab
