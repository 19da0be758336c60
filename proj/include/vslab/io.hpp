#pragma once

#include <cstdint>
#include <string>

#include "vslab/exact_dist.hpp"
#include "vslab/simlab.hpp"

namespace vslab {

/// CSV with header "k,numerator,denominator,float_prob".
std::string csv_exact(const ExactDistribution& d);
/// CSV with header "support,count,exact_freq_num,exact_freq_den".
std::string csv_empirical(const EmpiricalDistribution& d);
std::string csv_moments(const MomentTable& m);
std::string csv_asymptotic(const AsymptoticParams& p);

std::string json_exact(const ExactDistribution& d, int indent = 2);
std::string json_empirical(const EmpiricalDistribution& d, int indent = 2);
std::string json_moments(const MomentTable& m, int indent = 2);
std::string json_asymptotic(const AsymptoticParams& p, int indent = 2);

/// Deterministic shortest round-trip formatting for doubles.
std::string format_double(double x);

}  // namespace vslab
