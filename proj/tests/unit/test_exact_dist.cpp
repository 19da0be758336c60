#include "doctest.h"

#include <cmath>
#include <numeric>

#include "vslab/exact_dist.hpp"
#include "vslab/field.hpp"

using namespace vslab;

TEST_CASE("distribution construction invariants") {
    auto d = ExactDistribution::from_dense({Rat(1, 2), Rat(1, 2)});
    CHECK(d.size() == 2);
    CHECK(d.prob_at(0) == Rat(1, 2));
    CHECK(d.prob_at(5) == 0);
    CHECK_THROWS_AS(ExactDistribution::from_dense({Rat(1, 2), Rat(1, 3)}),
                    std::invalid_argument);  // does not sum to 1
    CHECK_THROWS_AS(ExactDistribution::from_dense({Rat(3, 2), Rat(-1, 2)}),
                    std::invalid_argument);  // negative entry
    // zero-probability support is dropped
    auto z = ExactDistribution::from_dense({Rat(1), Rat(0)});
    CHECK(z.size() == 1);
}

TEST_CASE("sieve transforms") {
    // S = (1, 0, ...) concentrates at zero events
    auto d0 = sieve_p_from_s({Rat(1), Rat(0), Rat(0)});
    CHECK(d0.prob_at(0) == 1);

    // two balls in two boxes: S = (1, 1/2, 0) gives P = (1/2, 1/2, 0)
    auto d = sieve_p_from_s({Rat(1), Rat(1, 2), Rat(0)});
    CHECK(d.prob_at(0) == Rat(1, 2));
    CHECK(d.prob_at(1) == Rat(1, 2));
    CHECK(d.prob_at(2) == 0);

    // inconsistent terms produce a negative probability
    CHECK_THROWS_AS(sieve_p_from_s({Rat(1), Rat(2), Rat(0)}), std::invalid_argument);
    CHECK_THROWS_AS(sieve_p_from_s({Rat(2)}), std::invalid_argument);  // S_0 != 1

    // round trips both ways on occupancy laws
    for (std::uint64_t t : {1, 2, 3})
        for (std::uint64_t ell : {1, 2, 3, 4, 5}) {
            const auto occ = occupancy_dist(t, ell);
            const auto S = sieve_s_from_p(occ, t * ell);
            CHECK(sieve_p_from_s(S) == occ);
            const auto S2 = sieve_s_from_p(sieve_p_from_s(S), t * ell);
            CHECK(S2 == S);
        }
}

TEST_CASE("occupancy moments") {
    CHECK(occupancy_moment(3, 4, 0) == 1);
    CHECK(occupancy_moment(1, 2, 1) == Rat(1, 2));  // 4 assignments, mean empty = 1/2
    CHECK(occupancy_moment(2, 2, 1) == Rat(9, 4));  // 16 assignments of 2 balls to 4 boxes
    CHECK_THROWS_AS(occupancy_moment(1, 2, 3), std::invalid_argument);
}

TEST_CASE("occupancy distribution") {
    const auto d = occupancy_dist(1, 2);
    CHECK(d.prob_at(0) == Rat(1, 2));
    CHECK(d.prob_at(1) == Rat(1, 2));
    CHECK(d.prob_at(2) == 0);

    // all three balls in one box: 3 of 27 assignments
    CHECK(occupancy_dist(1, 3).prob_at(2) == Rat(1, 9));

    // the all-empty count is impossible
    for (std::uint64_t t : {1, 2, 3})
        for (std::uint64_t ell : {1, 2, 4, 6}) CHECK(occupancy_dist(t, ell).prob_at(t * ell) == 0);

    CHECK_THROWS_AS(occupancy_dist(100, 100), BudgetError);
}

TEST_CASE("nonzero-branch value set distribution") {
    // q=3, l=2: both branches nonzero; PP probability 2!/2^2
    const auto d = nonzero_branch_valueset_dist(3, 2, 1);
    CHECK(d.prob_at(3) == Rat(1, 2));
    CHECK(d.prob_at(1) == 0);  // some coset is always hit

    // q=5, l=4: PP probability 4!/4^4 = 3/32
    CHECK(nonzero_branch_valueset_dist(5, 4, 1).prob_at(5) == Rat(3, 32));

    CHECK_THROWS_AS(nonzero_branch_valueset_dist(5, 3, 1), std::invalid_argument);
}

TEST_CASE("random-branch moments") {
    CHECK(random_poly_moment(3, 2, 1, 0) == 1);
    CHECK(random_poly_moment(3, 2, 1, 1) == Rat(8, 9));  // 2 (1 - 1/3)^2
    for (std::uint64_t q : {5, 7}) {
        // (q-1)(1 - 1/q)^{q-1}
        const Rat expect = make_rat(Int(q - 1) * int_pow(q - 1, q - 1), int_pow(q, q - 1));
        CHECK(random_poly_moment(q, q - 1, 1, 1) == expect);
    }
    CHECK_THROWS_AS(random_poly_moment(3, 2, 1, 5), std::invalid_argument);
}

TEST_CASE("random-branch value set distribution") {
    const auto d = random_poly_valueset_dist(3, 2, 1);
    CHECK(d.prob_at(1) == Rat(1, 9));
    CHECK(d.prob_at(2) == Rat(2, 3));
    CHECK(d.prob_at(3) == Rat(2, 9));
    CHECK_THROWS_AS(random_poly_valueset_dist(8, 3, 1), std::invalid_argument);
}

TEST_CASE("degree q-1 case matches the direct alternating-sum formula") {
    for (std::uint64_t q : {3, 5, 7, 101}) {
        const auto d = random_poly_valueset_dist(q, q - 1, 1);
        const Int qpow = int_pow(q, q - 1);
        const auto ck = binomial_row(q - 1);
        for (std::uint64_t k = 0; k <= q - 1; ++k) {
            // C(q-1,k) sum_j (-1)^{k-j} C(k,j) ((1+j)/q)^{q-1}
            const auto row = binomial_row(k);
            Int acc = 0;
            for (std::uint64_t j = 0; j <= k; ++j) {
                const Int term = row[j] * int_pow(1 + j, q - 1);
                if ((k - j) % 2 == 0)
                    acc += term;
                else
                    acc -= term;
            }
            REQUIRE(d.prob_at(std::int64_t(k + 1)) == make_rat(ck[k] * acc, qpow));
        }
    }
}

TEST_CASE("moment consistency between laws and closed forms") {
    for (std::uint64_t t : {1, 2, 3})
        for (std::uint64_t ell : {1, 2, 4, 7}) {
            const auto d = occupancy_dist(t, ell);
            CHECK(d.falling_moment(1) == occupancy_moment(t, ell, 1));
            if (t * ell >= 2) CHECK(d.falling_moment(2) == occupancy_moment(t, ell, 2));
        }
    for (std::uint64_t q : {3, 5, 9, 13})
        for (std::uint64_t ell = 1; ell < q; ++ell) {
            if ((q - 1) % ell != 0) continue;
            for (std::uint64_t r : {1, 2, 3}) {
                const std::uint64_t s = (q - 1) / ell;
                const std::uint64_t t = std::gcd(r, s);
                const auto x = random_poly_valueset_dist(q, ell, r);
                // Y = t*ell - (X-1) t/s
                std::vector<std::pair<std::int64_t, Rat>> entries;
                for (std::size_t i = 0; i < x.size(); ++i)
                    entries.emplace_back(
                        std::int64_t(t * ell) - (x.support()[i] - 1) * std::int64_t(t) /
                                                     std::int64_t(s),
                        x.probs()[i]);
                const auto y = ExactDistribution::from_pairs(std::move(entries));
                CHECK(y.falling_moment(1) == random_poly_moment(q, ell, r, 1));
                if (t * ell >= 2) CHECK(y.falling_moment(2) == random_poly_moment(q, ell, r, 2));
            }
        }
}

TEST_CASE("moment tables") {
    const auto m = occupancy_moment_table(1, 3, 3);
    CHECK(m.sieve_terms[0] == 1);
    for (std::uint64_t k = 0; k <= 3; ++k) {
        Int kf = 1;
        for (std::uint64_t i = 2; i <= k; ++i) kf *= Int(i);
        CHECK(m.falling_moments[k] == Rat(kf) * m.sieve_terms[k]);
    }
    const auto from_dist = moment_table_of(occupancy_dist(1, 3), 3);
    for (std::uint64_t k = 0; k <= 3; ++k)
        CHECK(from_dist.falling_moments[k] == m.falling_moments[k]);
}

TEST_CASE("occupancy normal-limit parameters") {
    const auto p = asymptotic_params_occupancy(1, 1000);
    CHECK(p.mu == doctest::Approx(1000.0 / std::exp(1.0)).epsilon(1e-12));
    CHECK(p.sigma2 ==
          doctest::Approx(std::exp(-2.0) * (std::exp(1.0) - 2.0) * 1000.0).epsilon(1e-12));
    CHECK(p.regime_ok);
    CHECK(p.sn_ok);
    // mu^2/sigma^6 ~ 147/ell: the concentration surrogate needs ell >> 10^4
    CHECK_FALSE(p.concentration_ok);
    CHECK(asymptotic_params_occupancy(1, 1000000).hypotheses_ok());

    CHECK_FALSE(asymptotic_params_occupancy(10, 1000).regime_ok);  // 10^5 >= 1000
    CHECK_FALSE(asymptotic_params_occupancy(10, 1000).hypotheses_ok());
}

TEST_CASE("random-polynomial normal-limit parameters") {
    const auto p = asymptotic_params_random_poly(10007);
    CHECK(p.mu == doctest::Approx(10007.0 / std::exp(1.0)).epsilon(1e-12));
    CHECK(p.sigma2 / 10007.0 ==
          doctest::Approx(std::exp(-1.0) - 2.0 * std::exp(-2.0)).epsilon(1e-12));
    // sigma^2/q = 1/e - 2/e^2 = 0.097208...
    CHECK(p.sigma2 / 10007.0 == doctest::Approx(0.0972088).epsilon(1e-5));
    // mu/q is constant in q
    CHECK(asymptotic_params_random_poly(499).mu / 499.0 ==
          doctest::Approx(p.mu / 10007.0).epsilon(1e-12));
}

TEST_CASE("small value-set asymptotics") {
    // k = 0 collapses to (1/q)^{q-1}
    CHECK(small_valueset_asymptotic_log(11, 0) ==
          doctest::Approx(-10.0 * std::log(11.0)).epsilon(1e-12));

    // ratio exact/asymptotic approaches 1 from sweep q = 101, 499, 997 at k = 3
    double prev_err = 1e9;
    for (std::uint64_t q : {101, 499, 997}) {
        const auto d = random_poly_valueset_dist(q, q - 1, 1);
        const double log_exact = rat_log(d.prob_at(4));  // |V_g| = k+1 = 4
        const double log_asym = small_valueset_asymptotic_log(q, 3);
        const double err = std::fabs(log_exact - log_asym);
        CHECK(err < prev_err);
        prev_err = err;
        if (q == 997) CHECK(std::fabs(std::exp(log_exact - log_asym) - 1.0) < 0.05);
    }
}
