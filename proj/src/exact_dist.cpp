#include "vslab/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vslab/field.hpp"

namespace vslab {

namespace {

void check_params(std::uint64_t q, std::uint64_t ell) {
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    if (ell == 0 || (q - 1) % ell != 0) throw std::invalid_argument("ell must divide q-1");
}

}  // namespace

ExactDistribution ExactDistribution::from_dense(const std::vector<Rat>& probs,
                                                std::int64_t first_support) {
    std::vector<std::pair<std::int64_t, Rat>> entries;
    entries.reserve(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        entries.emplace_back(first_support + std::int64_t(i), probs[i]);
    return from_pairs(std::move(entries));
}

ExactDistribution ExactDistribution::from_pairs(std::vector<std::pair<std::int64_t, Rat>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ExactDistribution d;
    Rat sum = 0;
    for (auto& [v, p] : entries) {
        if (sgn(p) < 0) throw std::invalid_argument("negative probability at support " + std::to_string(v));
        if (!d.support_.empty() && d.support_.back() == v)
            throw std::invalid_argument("duplicate support value " + std::to_string(v));
        sum += p;
        if (sgn(p) == 0) continue;
        d.support_.push_back(v);
        d.probs_.push_back(std::move(p));
    }
    if (sum != 1) throw std::invalid_argument("probabilities must sum to exactly 1");
    return d;
}

Rat ExactDistribution::prob_at(std::int64_t v) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), v);
    if (it == support_.end() || *it != v) return Rat(0);
    return probs_[std::size_t(it - support_.begin())];
}

Rat ExactDistribution::mean() const {
    Rat m = 0;
    for (std::size_t i = 0; i < support_.size(); ++i) m += Rat(support_[i]) * probs_[i];
    return m;
}

Rat ExactDistribution::falling_moment(std::uint64_t k) const {
    Rat m = 0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        const std::int64_t y = support_[i];
        if (y < 0) throw std::domain_error("falling moment needs nonnegative support");
        m += Rat(falling_factorial(std::uint64_t(y), k)) * probs_[i];
    }
    return m;
}

void evaluate_hypothesis_flags(AsymptoticParams& p, double concentration_threshold) {
    p.sn_ok = p.mu > 0 && p.s_n > -1.0 / p.mu;
    const double s3 = p.sigma2 * p.sigma2 * p.sigma2;
    p.concentration_ok = s3 > 0 && (p.mu * p.mu) / s3 <= concentration_threshold;
}

ExactDistribution sieve_p_from_s(const std::vector<Rat>& S) {
    if (S.empty() || S[0] != 1) throw std::invalid_argument("sieve terms must start with S_0 = 1");
    const std::uint64_t n = S.size() - 1;
    std::vector<Rat> probs(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        Rat acc = 0;
        Int chk = 1;  // C(h,k), advanced multiplicatively in h
        for (std::uint64_t h = k; h <= n; ++h) {
            if ((h - k) % 2 == 0)
                acc += Rat(chk) * S[h];
            else
                acc -= Rat(chk) * S[h];
            chk *= Int(h + 1);
            mpz_divexact_ui(chk.get_mpz_t(), chk.get_mpz_t(), unsigned(h + 1 - k));
        }
        if (sgn(acc) < 0)
            throw std::invalid_argument("inconsistent sieve terms: negative probability at k=" +
                                        std::to_string(k));
        probs[k] = std::move(acc);
    }
    return ExactDistribution::from_dense(probs, 0);
}

std::vector<Rat> sieve_s_from_p(const ExactDistribution& d, std::uint64_t n) {
    if (!d.support().empty() &&
        (d.support().front() < 0 || d.support().back() > std::int64_t(n)))
        throw std::invalid_argument("distribution support must lie in [0, n]");
    std::vector<Rat> S(n + 1, Rat(0));
    for (std::uint64_t k = 0; k <= n; ++k)
        for (std::size_t i = 0; i < d.support().size(); ++i) {
            const std::uint64_t h = std::uint64_t(d.support()[i]);
            if (h >= k) S[k] += Rat(binomial(h, k)) * d.probs()[i];
        }
    return S;
}

Rat occupancy_moment(std::uint64_t t, std::uint64_t ell, std::uint64_t k) {
    if (t < 1 || ell < 1) throw std::invalid_argument("t and ell must be >= 1");
    const std::uint64_t n = t * ell;
    if (k > n) throw std::invalid_argument("moment order k out of range");
    return make_rat(falling_factorial(n, k) * int_pow(n - k, ell), int_pow(n, ell));
}

ExactDistribution occupancy_dist(std::uint64_t t, std::uint64_t ell, std::uint64_t exact_limit) {
    if (t < 1 || ell < 1) throw std::invalid_argument("t and ell must be >= 1");
    const std::uint64_t n = t * ell;
    if (n > exact_limit)
        throw BudgetError("t*ell = " + std::to_string(n) + " exceeds exact-mode limit");

    std::vector<Int> pw(n + 1);
    for (std::uint64_t j = 0; j <= n; ++j) pw[j] = int_pow(j, ell);
    const Int denom = pw[n];

    const std::vector<Int> cnk = binomial_row(n);
    std::vector<Rat> probs(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        const std::vector<Int> row = binomial_row(n - k);
        Int acc = 0;
        for (std::uint64_t j = 0; j <= n - k; ++j) {
            if ((n - k - j) % 2 == 0)
                acc += row[j] * pw[j];
            else
                acc -= row[j] * pw[j];
        }
        probs[k] = make_rat(cnk[k] * acc, denom);
    }
    return ExactDistribution::from_dense(probs, 0);
}

ExactDistribution nonzero_branch_valueset_dist(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                               std::uint64_t exact_limit) {
    check_params(q, ell);
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    const std::uint64_t s = (q - 1) / ell;
    const std::uint64_t t = std::gcd(r, s);
    const std::uint64_t n = t * ell;
    const ExactDistribution y = occupancy_dist(t, ell, exact_limit);
    std::vector<std::pair<std::int64_t, Rat>> entries;
    entries.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const std::uint64_t k = n - std::uint64_t(y.support()[i]);  // hit classes
        entries.emplace_back(std::int64_t(1 + (s / t) * k), y.probs()[i]);
    }
    return ExactDistribution::from_pairs(std::move(entries));
}

Rat random_poly_moment(std::uint64_t q, std::uint64_t ell, std::uint64_t r, std::uint64_t k) {
    check_params(q, ell);
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    const std::uint64_t s = (q - 1) / ell;
    const std::uint64_t t = std::gcd(r, s);
    const std::uint64_t n = t * ell;
    if (k > n) throw std::invalid_argument("moment order k out of range");
    // (tl)_k (1 - sk/(tq))^ell = (tl)_k (tq - sk)^ell / (tq)^ell
    return make_rat(falling_factorial(n, k) * int_pow(t * q - s * k, ell), int_pow(t * q, ell));
}

ExactDistribution random_poly_valueset_dist(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                            std::uint64_t exact_limit) {
    check_params(q, ell);
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    const std::uint64_t s = (q - 1) / ell;
    const std::uint64_t t = std::gcd(r, s);
    const std::uint64_t n = t * ell;
    if (n > exact_limit)
        throw BudgetError("t*ell = " + std::to_string(n) + " exceeds exact-mode limit");

    std::vector<Int> pw(n + 1);
    for (std::uint64_t j = 0; j <= n; ++j) pw[j] = int_pow(t + s * j, ell);
    const Int denom = int_pow(t * q, ell);

    const std::vector<Int> cnk = binomial_row(n);
    std::vector<std::pair<std::int64_t, Rat>> entries;
    entries.reserve(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        const std::vector<Int> row = binomial_row(k);
        Int acc = 0;
        for (std::uint64_t j = 0; j <= k; ++j) {
            if ((k - j) % 2 == 0)
                acc += row[j] * pw[j];
            else
                acc -= row[j] * pw[j];
        }
        entries.emplace_back(std::int64_t(1 + (s / t) * k), make_rat(cnk[k] * acc, denom));
    }
    return ExactDistribution::from_pairs(std::move(entries));
}

MomentTable occupancy_moment_table(std::uint64_t t, std::uint64_t ell, std::uint64_t k_max) {
    MomentTable m;
    m.k_max = k_max;
    Int kfact = 1;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k > 0) kfact *= Int(k);
        m.falling_moments.push_back(occupancy_moment(t, ell, k));
        m.sieve_terms.push_back(m.falling_moments.back() / Rat(kfact));
    }
    return m;
}

MomentTable random_poly_moment_table(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                     std::uint64_t k_max) {
    MomentTable m;
    m.k_max = k_max;
    Int kfact = 1;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k > 0) kfact *= Int(k);
        m.falling_moments.push_back(random_poly_moment(q, ell, r, k));
        m.sieve_terms.push_back(m.falling_moments.back() / Rat(kfact));
    }
    return m;
}

MomentTable moment_table_of(const ExactDistribution& d, std::uint64_t k_max) {
    MomentTable m;
    m.k_max = k_max;
    Int kfact = 1;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k > 0) kfact *= Int(k);
        m.falling_moments.push_back(d.falling_moment(k));
        m.sieve_terms.push_back(m.falling_moments.back() / Rat(kfact));
    }
    return m;
}

AsymptoticParams asymptotic_params_occupancy(std::uint64_t t, std::uint64_t ell,
                                             double concentration_threshold) {
    if (t < 1 || ell < 1) throw std::invalid_argument("t and ell must be >= 1");
    AsymptoticParams p;
    const double td = double(t), ld = double(ell);
    p.mu = td * std::exp(-1.0 / td) * ld;
    p.sigma2 = td * std::exp(-2.0 / td) * (std::expm1(1.0 / td) - 1.0 / td) * ld;
    p.s_n = (p.sigma2 - p.mu) / (p.mu * p.mu);
    p.regime_ok = std::pow(td, 5.0) < ld;  // t = o(ell^{1/5}) surrogate
    evaluate_hypothesis_flags(p, concentration_threshold);
    return p;
}

AsymptoticParams asymptotic_params_random_poly(std::uint64_t q, double concentration_threshold) {
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    AsymptoticParams p;
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
    p.mu = double(q) * e1;
    p.sigma2 = (e1 - 2.0 * e2) * double(q);
    p.s_n = (p.sigma2 - p.mu) / (p.mu * p.mu);
    p.regime_ok = true;  // t = 1, ell = q-1
    evaluate_hypothesis_flags(p, concentration_threshold);
    return p;
}

double small_valueset_asymptotic_log(std::uint64_t q, std::uint64_t k) {
    if (q < 2 || k > q - 1) throw std::invalid_argument("need 0 <= k <= q-1");
    return double(k) * std::log(double(q - 1)) - std::lgamma(double(k) + 1.0) +
           double(q - 1) * (std::log(double(k + 1)) - std::log(double(q)));
}

double small_valueset_asymptotic(std::uint64_t q, std::uint64_t k) {
    return std::exp(small_valueset_asymptotic_log(q, k));
}

}  // namespace vslab
