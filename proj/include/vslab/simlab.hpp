#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vslab/cyclomap.hpp"
#include "vslab/exact_dist.hpp"
#include "vslab/field.hpp"
#include "vslab/rational.hpp"
#include "vslab/union_sets.hpp"

namespace vslab {

struct Budgets {
    std::uint64_t enum_occupancy = 10'000'000;
    std::uint64_t enum_branches = 100'000'000;
    std::uint64_t enum_union = 1'000'000;
};

/// Counter-based per-trial stream: (master seed, trial index) determines the
/// whole stream, so draws are identical across runs and across any
/// partitioning of trials over workers.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial);
    std::uint64_t next();
    /// Unbiased uniform draw in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, 1).
    double unit();

private:
    std::uint64_t state_;
};

/// Integer-support counts with exact rational frequencies.
class EmpiricalDistribution {
public:
    void add(std::int64_t value, std::uint64_t count = 1);
    void merge(const EmpiricalDistribution& other);

    std::uint64_t trials() const { return trials_; }
    const std::map<std::int64_t, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t count_at(std::int64_t v) const;
    Rat freq_at(std::int64_t v) const;
    double mean() const;
    /// Exact rational frequencies as a distribution; trials must be > 0.
    ExactDistribution to_exact() const;
    EmpiricalDistribution map_support(const std::function<std::int64_t(std::int64_t)>& f) const;

    bool operator==(const EmpiricalDistribution&) const = default;

private:
    std::map<std::int64_t, std::uint64_t> counts_;
    std::uint64_t trials_ = 0;
};

// ---- exhaustive enumeration oracles -------------------------------------

/// Empty-box counts over all (t*ell)^ell assignments of ell balls.
EmpiricalDistribution enumerate_occupancy(std::uint64_t t, std::uint64_t ell,
                                          std::uint64_t budget = Budgets{}.enum_occupancy,
                                          unsigned workers = 0);

/// |V_g| counts over all branch tuples (F_q or F_q^* per nonzero_only).
EmpiricalDistribution enumerate_branch_tuples(const Field& field, std::uint64_t ell,
                                              std::uint64_t r, bool nonzero_only,
                                              std::uint64_t budget = Budgets{}.enum_branches,
                                              unsigned workers = 0);

/// |union A_i| counts over all prod_j C(n, m_j) subset tuples.
EmpiricalDistribution enumerate_union(const UnionModel& model,
                                      std::uint64_t budget = Budgets{}.enum_union,
                                      unsigned workers = 0);

// ---- seeded Monte Carlo samplers -----------------------------------------

EmpiricalDistribution sample_valueset(const Field& field, std::uint64_t ell, std::uint64_t r,
                                      std::uint64_t trials, std::uint64_t seed, bool nonzero_only,
                                      unsigned workers = 0);

EmpiricalDistribution sample_occupancy(std::uint64_t t, std::uint64_t ell, std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers = 0);

EmpiricalDistribution sample_union(const UnionModel& model, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers = 0);

// ---- diagnostics ----------------------------------------------------------

Rat tv_distance(const ExactDistribution& a, const ExactDistribution& b);
Rat tv_distance(const EmpiricalDistribution& a, const ExactDistribution& b);

/// Standard normal distribution function, rational-polynomial approximation
/// (|error| < 7.5e-8).
double normal_cdf(double x);

/// Kolmogorov-Smirnov statistic of (samples - mu)/sigma against the standard
/// normal. Requires sigma > 0 and at least 100 samples.
double ks_normal(std::vector<double> samples, double mu, double sigma);
double ks_normal(const EmpiricalDistribution& samples, double mu, double sigma);

struct HypothesisFlags {
    bool sn_ok = false;
    bool concentration_ok = false;
};
HypothesisFlags check_normality_hypotheses(const AsymptoticParams& p,
                                           double concentration_threshold = 0.01);

// ---- value-set bound checks ------------------------------------------------

struct BoundViolation {
    std::uint64_t ell_enum = 0;     // index of the enumerated mapping family
    std::uint64_t tuple_index = 0;  // branch tuple odometer position
    std::uint64_t value_set_size = 0;
    std::int64_t degree = 0;
    std::uint64_t index = 0;  // index ell of the interpolated polynomial
    std::string rule;
};

struct BoundReport {
    std::uint64_t checked = 0;
    std::uint64_t pp_count = 0;
    std::uint64_t skipped_constant = 0;
    std::vector<BoundViolation> violations;  // empty on a correct implementation
};

/// Enumerates every branch tuple for every divisor ell <= ell_max of q-1,
/// interpolates each mapping to a polynomial, and checks: for non-PPs,
/// |V_g| <= q - (q-1)/ell and |V_g| <= q - (q-1)/d; always |V_g| >= ceil(q/d).
BoundReport check_bounds(const Field& field, std::uint64_t ell_max, std::uint64_t r = 1,
                         std::uint64_t budget = Budgets{}.enum_branches, unsigned workers = 0);

}  // namespace vslab
