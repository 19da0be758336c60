#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vslab/rational.hpp"

namespace vslab {

inline constexpr std::uint64_t kDefaultExactLimit = 2000;

/// Finite integer support with exact rational probabilities summing to 1.
/// Entries with probability exactly 0 are dropped; support is strictly
/// increasing. Immutable once built.
class ExactDistribution {
public:
    ExactDistribution() = default;

    /// probs[i] is the probability of first_support + i.
    static ExactDistribution from_dense(const std::vector<Rat>& probs,
                                        std::int64_t first_support = 0);
    static ExactDistribution from_pairs(std::vector<std::pair<std::int64_t, Rat>> entries);

    const std::vector<std::int64_t>& support() const { return support_; }
    const std::vector<Rat>& probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }

    /// Probability of v; exact 0 when v is off-support.
    Rat prob_at(std::int64_t v) const;

    Rat mean() const;
    /// E((Y)_k), the k-th falling-factorial moment.
    Rat falling_moment(std::uint64_t k) const;

    bool operator==(const ExactDistribution&) const = default;

private:
    std::vector<std::int64_t> support_;
    std::vector<Rat> probs_;
};

/// E((Y)_k) for k = 0..k_max together with the sieve terms S_k = E((Y)_k)/k!.
struct MomentTable {
    std::uint64_t k_max = 0;
    std::vector<Rat> falling_moments;
    std::vector<Rat> sieve_terms;
};

/// Normal-limit parameters with finite-sample hypothesis surrogates.
struct AsymptoticParams {
    double mu = 0.0;
    double sigma2 = 0.0;
    double s_n = 0.0;
    bool regime_ok = true;          // the producing formula's little-o surrogate
    bool sn_ok = false;             // s_n > -1/mu
    bool concentration_ok = false;  // mu^2 / sigma^6 <= threshold
    bool hypotheses_ok() const { return regime_ok && sn_ok && concentration_ok; }
};

/// Fills sn_ok / concentration_ok from mu, sigma2, s_n.
void evaluate_hypothesis_flags(AsymptoticParams& p, double concentration_threshold = 0.01);

/// Inclusion-exclusion: P(Y=k) = sum_{h>=k} (-1)^{h-k} C(h,k) S_h.
/// S must start with S_0 = 1; a negative resulting probability means the
/// sieve terms are inconsistent and raises std::invalid_argument.
ExactDistribution sieve_p_from_s(const std::vector<Rat>& S);

/// Inverse transform: S_k = sum_{h>=k} C(h,k) P(Y=h), k = 0..n.
std::vector<Rat> sieve_s_from_p(const ExactDistribution& d, std::uint64_t n);

/// E((Y)_k) for Y = empty boxes among t*ell boxes after ell balls.
Rat occupancy_moment(std::uint64_t t, std::uint64_t ell, std::uint64_t k);

/// Exact law of the number of empty boxes.
ExactDistribution occupancy_dist(std::uint64_t t, std::uint64_t ell,
                                 std::uint64_t exact_limit = kDefaultExactLimit);

/// |V_g| for branches drawn uniformly from F_q^*: X = 1 + (s/t)(t*ell - Y)
/// with Y occupancy-distributed.
ExactDistribution nonzero_branch_valueset_dist(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                               std::uint64_t exact_limit = kDefaultExactLimit);

/// E((Y)_k) for branches drawn uniformly from all of F_q.
Rat random_poly_moment(std::uint64_t q, std::uint64_t ell, std::uint64_t r, std::uint64_t k);

/// |V_g| for branches drawn uniformly from all of F_q:
/// P(X = 1 + ks/t) = C(tl,k) sum_j (-1)^{k-j} C(k,j) ((t+sj)/(tq))^ell.
ExactDistribution random_poly_valueset_dist(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                            std::uint64_t exact_limit = kDefaultExactLimit);

MomentTable occupancy_moment_table(std::uint64_t t, std::uint64_t ell, std::uint64_t k_max);
MomentTable random_poly_moment_table(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                     std::uint64_t k_max);
/// Moments computed directly from a distribution (consistency oracle).
MomentTable moment_table_of(const ExactDistribution& d, std::uint64_t k_max);

/// mu = t e^{-1/t} ell, sigma^2 = t e^{-2/t}(e^{1/t}-1-1/t) ell; the regime
/// flag is the t^5 < ell surrogate for t = o(ell^{1/5}).
AsymptoticParams asymptotic_params_occupancy(std::uint64_t t, std::uint64_t ell,
                                             double concentration_threshold = 0.01);

/// mu = q/e, sigma^2 = (e^{-1} - 2e^{-2}) q for missing values of a random
/// polynomial with g(0) = 0 (index q-1).
AsymptoticParams asymptotic_params_random_poly(std::uint64_t q,
                                               double concentration_threshold = 0.01);

/// (1/k!)(q-1)^k ((k+1)/q)^{q-1}, evaluated in log space.
double small_valueset_asymptotic(std::uint64_t q, std::uint64_t k);
double small_valueset_asymptotic_log(std::uint64_t q, std::uint64_t k);

}  // namespace vslab
