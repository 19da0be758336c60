#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vslab/exact_dist.hpp"
#include "vslab/rational.hpp"

namespace vslab {

/// X = |A_1 u ... u A_l| where A_i is a uniformly random m_i-subset of an
/// n-set, chosen independently; Y = n - X is the uncovered count.
struct UnionModel {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> sizes;  // m_1..m_l, each in [1, n]
};

UnionModel make_union_model(std::uint64_t n, std::vector<std::uint64_t> sizes);

/// E((Y)_k) = (n)_k prod_j (n-m_j)_k / (n)_k.
Rat union_moment(const UnionModel& model, std::uint64_t k);

/// Exact law of X: P(X=i) = C(n,i) sum_h (-1)^h C(i,h) prod_j C(i-h,m_j)/C(n,m_j).
ExactDistribution union_dist(const UnionModel& model,
                             std::uint64_t exact_limit = kDefaultExactLimit);

MomentTable union_moment_table(const UnionModel& model, std::uint64_t k_max);

/// Equal-size special case: E(X) = n(1 - (1-m/n)^l); V(X) via the
/// falling-factorial moments of Y (the enumeration-verified route).
std::pair<Rat, Rat> bp_moments(std::uint64_t n, std::uint64_t m, std::uint64_t ell);

struct UnionHypothesisThresholds {
    double max_u_times_ell = 10.0;  // surrogate for u_j = O(1/l)
    double min_u_sum = 0.1;         // surrogate for sum u_i > c
    double concentration = 0.01;
};

/// mu = n prod(1-u_i), sigma^2 = n (1 - (1 + sum u_i) prod(1-u_i)) prod(1-u_i).
AsymptoticParams union_asymptotic(const UnionModel& model,
                                  const UnionHypothesisThresholds& th = {});

/// Comma list "2,3,5" or shorthand "5x10" (ten subsets of size 5).
std::vector<std::uint64_t> parse_sizes(const std::string& text);

}  // namespace vslab
