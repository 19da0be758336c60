#include "vslab/union_sets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vslab/field.hpp"

namespace vslab {

UnionModel make_union_model(std::uint64_t n, std::vector<std::uint64_t> sizes) {
    if (n < 1) throw std::invalid_argument("ground set must be nonempty");
    if (sizes.empty()) throw std::invalid_argument("need at least one subset size");
    for (auto m : sizes)
        if (m < 1 || m > n)
            throw std::invalid_argument("subset sizes must lie in [1, n]");
    return UnionModel{n, std::move(sizes)};
}

Rat union_moment(const UnionModel& model, std::uint64_t k) {
    if (k > model.n) throw std::invalid_argument("moment order k out of range");
    Int num = 1;
    for (auto m : model.sizes) {
        const Int f = falling_factorial(model.n - m, k);
        if (f == 0) return Rat(0);
        num *= f;
    }
    Int den;
    mpz_pow_ui(den.get_mpz_t(), falling_factorial(model.n, k).get_mpz_t(),
               unsigned(model.sizes.size() - 1));
    return make_rat(std::move(num), std::move(den));
}

ExactDistribution union_dist(const UnionModel& model, std::uint64_t exact_limit) {
    const std::uint64_t n = model.n;
    if (n > exact_limit)
        throw BudgetError("n = " + std::to_string(n) + " exceeds exact-mode limit");

    // prodC[w] = prod_j C(w, m_j); denominator is prodC[n]
    std::vector<Int> prodC(n + 1, Int(1));
    for (auto m : model.sizes) {
        Int c = 1;  // C(w, m) advanced in w, starting at w = m
        for (std::uint64_t w = 0; w <= n; ++w) {
            if (w < m) {
                prodC[w] = 0;
                continue;
            }
            if (w > m) {
                c *= Int(w);
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), unsigned(w - m));
            }
            prodC[w] *= c;
        }
    }
    const Int denom = prodC[n];

    const std::vector<Int> cni = binomial_row(n);
    std::vector<Rat> probs(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) {
        const std::vector<Int> row = binomial_row(i);
        Int acc = 0;
        for (std::uint64_t h = 0; h <= i; ++h) {
            if (prodC[i - h] == 0) continue;
            if (h % 2 == 0)
                acc += row[h] * prodC[i - h];
            else
                acc -= row[h] * prodC[i - h];
        }
        probs[i] = make_rat(cni[i] * acc, denom);
    }
    return ExactDistribution::from_dense(probs, 0);
}

MomentTable union_moment_table(const UnionModel& model, std::uint64_t k_max) {
    MomentTable m;
    m.k_max = k_max;
    Int kfact = 1;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k > 0) kfact *= Int(k);
        m.falling_moments.push_back(union_moment(model, k));
        m.sieve_terms.push_back(m.falling_moments.back() / Rat(kfact));
    }
    return m;
}

std::pair<Rat, Rat> bp_moments(std::uint64_t n, std::uint64_t m, std::uint64_t ell) {
    const UnionModel model = make_union_model(n, std::vector<std::uint64_t>(ell, m));
    const Rat ey = union_moment(model, 1);
    const Rat ey2 = n >= 2 ? union_moment(model, 2) : Rat(0);
    const Rat ex = Rat(Int(n)) - ey;
    const Rat var = ey2 + ey - ey * ey;
    return {ex, var};
}

AsymptoticParams union_asymptotic(const UnionModel& model, const UnionHypothesisThresholds& th) {
    AsymptoticParams p;
    const double n = double(model.n);
    const double ell = double(model.sizes.size());
    double prod = 1.0, usum = 0.0, umax = 0.0;
    for (auto m : model.sizes) {
        const double u = double(m) / n;
        prod *= 1.0 - u;
        usum += u;
        umax = std::max(umax, u);
    }
    p.mu = n * prod;
    p.sigma2 = n * (1.0 - (1.0 + usum) * prod) * prod;
    p.s_n = p.mu > 0 ? (p.sigma2 - p.mu) / (p.mu * p.mu) : 0.0;
    p.regime_ok = umax * ell <= th.max_u_times_ell && usum >= th.min_u_sum;
    evaluate_hypothesis_flags(p, th.concentration);
    return p;
}

std::vector<std::uint64_t> parse_sizes(const std::string& text) {
    std::vector<std::uint64_t> sizes;
    try {
        const auto x = text.find('x');
        if (x != std::string::npos) {
            const std::uint64_t m = std::stoull(text.substr(0, x));
            const std::uint64_t count = std::stoull(text.substr(x + 1));
            if (count == 0) throw std::invalid_argument("need at least one subset");
            sizes.assign(count, m);
            return sizes;
        }
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) sizes.push_back(std::stoull(tok));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad sizes list: '" + text + "'");
    }
    if (sizes.empty()) throw std::invalid_argument("empty sizes list");
    return sizes;
}

}  // namespace vslab
