#include "doctest.h"

#include "vslab/exact_dist.hpp"
#include "vslab/io.hpp"
#include "vslab/simlab.hpp"

using namespace vslab;

TEST_CASE("exact distribution csv") {
    const auto d = random_poly_valueset_dist(3, 2, 1);
    const std::string csv = csv_exact(d);
    CHECK(csv.substr(0, csv.find('\n')) == "k,numerator,denominator,float_prob");
    // rows carry the exact rationals 1/9, 2/3, 2/9 in lowest terms
    CHECK(csv.find("\n1,1,9,") != std::string::npos);
    CHECK(csv.find("\n2,2,3,") != std::string::npos);
    CHECK(csv.find("\n3,2,9,") != std::string::npos);
}

TEST_CASE("empirical csv") {
    EmpiricalDistribution d;
    d.add(2, 3);
    d.add(4, 1);
    const std::string csv = csv_empirical(d);
    CHECK(csv == "support,count,exact_freq_num,exact_freq_den\n2,3,3,4\n4,1,1,4\n");
}

TEST_CASE("csv emission is deterministic") {
    const Field f5 = Field::build(5, 1);
    const auto a = sample_valueset(f5, 4, 1, 2000, 77, false, 1);
    const auto b = sample_valueset(f5, 4, 1, 2000, 77, false, 2);
    CHECK(csv_empirical(a) == csv_empirical(b));
    CHECK(format_double(0.1) == format_double(0.1));
}

TEST_CASE("json mirrors exact rationals as strings") {
    const auto d = random_poly_valueset_dist(3, 2, 1);
    const std::string j = json_exact(d);
    CHECK(j.find("\"num\": \"1\"") != std::string::npos);
    CHECK(j.find("\"den\": \"9\"") != std::string::npos);

    const auto m = occupancy_moment_table(2, 2, 1);
    const std::string mj = json_moments(m);
    CHECK(mj.find("\"num\": \"9\"") != std::string::npos);  // E(Y) = 9/4
    CHECK(mj.find("\"den\": \"4\"") != std::string::npos);

    const std::string aj = json_asymptotic(asymptotic_params_occupancy(1, 1000000));
    CHECK(aj.find("\"hypotheses_ok\": true") != std::string::npos);
}

TEST_CASE("moments csv shape") {
    const auto m = occupancy_moment_table(1, 2, 2);
    const std::string csv = csv_moments(m);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "k,falling_num,falling_den,sieve_num,sieve_den,falling_float");
    CHECK(csv.find("\n0,1,1,1,1,") != std::string::npos);
    CHECK(csv.find("\n1,1,2,1,2,") != std::string::npos);
}
