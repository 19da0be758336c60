#include "vslab/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "vslab/poly.hpp"

namespace vslab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

unsigned resolve_workers(unsigned workers, std::uint64_t work_items) {
    if (workers == 0) {
        workers = std::thread::hardware_concurrency();
        if (workers == 0) workers = 1;
    }
    if (work_items < workers) workers = unsigned(std::max<std::uint64_t>(work_items, 1));
    return workers;
}

/// Runs fn(slot, begin, end) over a partition of [0, total); results are
/// merged by the caller in slot order, so the outcome is worker-count
/// independent whenever the per-item work is.
template <typename Fn>
void parallel_ranges(std::uint64_t total, unsigned workers, Fn&& fn) {
    if (workers <= 1 || total <= 1) {
        fn(0u, std::uint64_t(0), total);
        return;
    }
    std::vector<std::thread> threads;
    const std::uint64_t chunk = total / workers, extra = total % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
        begin = end;
    }
    for (auto& t : threads) t.join();
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (base != 0 && total > cap / base)
            throw BudgetError("enumeration of " + std::to_string(base) + "^" + std::to_string(e) +
                              " tuples exceeds budget " + std::to_string(cap));
        total *= base;
    }
    return total;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial) {
    state_ = mix64(mix64(master_seed + kGolden) ^ (trial * 0xD1B54A32D192ED03ULL + 1));
}

std::uint64_t TrialRng::next() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t TrialRng::below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection; exact uniformity
    unsigned __int128 m = (unsigned __int128)next() * bound;
    auto lo = std::uint64_t(m);
    if (lo < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            m = (unsigned __int128)next() * bound;
            lo = std::uint64_t(m);
        }
    }
    return std::uint64_t(m >> 64);
}

double TrialRng::unit() { return double(next() >> 11) * 0x1.0p-53; }

void EmpiricalDistribution::add(std::int64_t value, std::uint64_t count) {
    counts_[value] += count;
    trials_ += count;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
    for (const auto& [v, c] : other.counts_) counts_[v] += c;
    trials_ += other.trials_;
}

std::uint64_t EmpiricalDistribution::count_at(std::int64_t v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
}

Rat EmpiricalDistribution::freq_at(std::int64_t v) const {
    if (trials_ == 0) throw std::domain_error("empty distribution has no frequencies");
    return make_rat(Int(count_at(v)), Int(trials_));
}

double EmpiricalDistribution::mean() const {
    if (trials_ == 0) throw std::domain_error("empty distribution has no mean");
    Rat acc = 0;
    for (const auto& [v, c] : counts_) acc += Rat(Int(v) * Int(c));
    return rat_to_double(acc / Rat(Int(trials_)));
}

ExactDistribution EmpiricalDistribution::to_exact() const {
    if (trials_ == 0) throw std::domain_error("empty distribution has no frequencies");
    std::vector<std::pair<std::int64_t, Rat>> entries;
    entries.reserve(counts_.size());
    for (const auto& [v, c] : counts_) entries.emplace_back(v, make_rat(Int(c), Int(trials_)));
    return ExactDistribution::from_pairs(std::move(entries));
}

EmpiricalDistribution EmpiricalDistribution::map_support(
    const std::function<std::int64_t(std::int64_t)>& f) const {
    EmpiricalDistribution out;
    for (const auto& [v, c] : counts_) out.add(f(v), c);
    return out;
}

// ---- enumeration oracles ----------------------------------------------------

EmpiricalDistribution enumerate_occupancy(std::uint64_t t, std::uint64_t ell,
                                          std::uint64_t budget, unsigned workers) {
    if (t < 1 || ell < 1) throw std::invalid_argument("t and ell must be >= 1");
    const std::uint64_t boxes = t * ell;
    const std::uint64_t total = checked_pow(boxes, ell, budget);
    workers = resolve_workers(workers, total);

    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(boxes + 1, 0));
    parallel_ranges(total, workers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> balls(ell);
        std::uint64_t idx = begin;
        for (std::uint64_t i = 0; i < ell; ++i) {
            balls[i] = idx % boxes;
            idx /= boxes;
        }
        std::vector<std::uint32_t> stamp(boxes, 0);
        std::uint32_t cur = 0;
        for (std::uint64_t n = begin; n < end; ++n) {
            if (++cur == 0) {  // stamp wrapped
                std::fill(stamp.begin(), stamp.end(), 0);
                cur = 1;
            }
            std::uint64_t occupied = 0;
            for (std::uint64_t i = 0; i < ell; ++i) {
                if (stamp[balls[i]] != cur) {
                    stamp[balls[i]] = cur;
                    ++occupied;
                }
            }
            ++partial[slot][boxes - occupied];
            for (std::uint64_t i = 0; i < ell; ++i) {  // odometer step
                if (++balls[i] < boxes) break;
                balls[i] = 0;
            }
        }
    });

    EmpiricalDistribution out;
    for (std::uint64_t y = 0; y <= boxes; ++y) {
        std::uint64_t c = 0;
        for (unsigned w = 0; w < workers; ++w) c += partial[w][y];
        if (c > 0) out.add(std::int64_t(y), c);
    }
    return out;
}

EmpiricalDistribution enumerate_branch_tuples(const Field& field, std::uint64_t ell,
                                              std::uint64_t r, bool nonzero_only,
                                              std::uint64_t budget, unsigned workers) {
    const std::uint64_t q = field.q();
    if (ell == 0 || (q - 1) % ell != 0) throw std::invalid_argument("ell must divide q-1");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    const std::uint64_t base = nonzero_only ? q - 1 : q;
    const std::uint64_t total = checked_pow(base, ell, budget);
    workers = resolve_workers(workers, total);

    // digit -> branch element; exponent order for nonzero, 0 then exponents otherwise
    std::vector<Field::Elem> elem_of(base);
    for (std::uint64_t d = 0; d < base; ++d)
        elem_of[d] = nonzero_only ? field.exp(d) : (d == 0 ? 0 : field.exp(d - 1));

    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(q + 1, 0));
    parallel_ranges(total, workers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
        ValueSetCounter counter(field, ell, r);
        std::vector<std::uint64_t> digits(ell);
        std::vector<Field::Elem> branches(ell);
        std::uint64_t idx = begin;
        for (std::uint64_t i = 0; i < ell; ++i) {
            digits[i] = idx % base;
            branches[i] = elem_of[digits[i]];
            idx /= base;
        }
        for (std::uint64_t n = begin; n < end; ++n) {
            ++partial[slot][counter.size_of(branches)];
            for (std::uint64_t i = 0; i < ell; ++i) {
                if (++digits[i] < base) {
                    branches[i] = elem_of[digits[i]];
                    break;
                }
                digits[i] = 0;
                branches[i] = elem_of[0];
            }
        }
    });

    EmpiricalDistribution out;
    for (std::uint64_t v = 0; v <= q; ++v) {
        std::uint64_t c = 0;
        for (unsigned w = 0; w < workers; ++w) c += partial[w][v];
        if (c > 0) out.add(std::int64_t(v), c);
    }
    return out;
}

namespace {

// all m-subsets of {0..n-1} in lex order, flattened with stride m
std::vector<std::uint32_t> all_subsets(std::uint64_t n, std::uint64_t m, std::uint64_t& count_out) {
    std::vector<std::uint32_t> flat;
    std::vector<std::uint32_t> c(m);
    std::iota(c.begin(), c.end(), 0);
    count_out = 0;
    for (;;) {
        flat.insert(flat.end(), c.begin(), c.end());
        ++count_out;
        // next combination
        std::size_t i = m;
        while (i-- > 0) {
            if (c[i] < n - m + i) {
                ++c[i];
                for (std::size_t j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
                break;
            }
            if (i == 0) return flat;
        }
    }
}

}  // namespace

EmpiricalDistribution enumerate_union(const UnionModel& model, std::uint64_t budget,
                                      unsigned workers) {
    const std::uint64_t n = model.n;
    const std::size_t ell = model.sizes.size();

    std::vector<std::vector<std::uint32_t>> lists(ell);
    std::vector<std::uint64_t> list_count(ell);
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < ell; ++j) {
        const Int c = binomial(n, model.sizes[j]);
        if (!c.fits_ulong_p() || c.get_ui() > budget / total)
            throw BudgetError("union enumeration exceeds budget " + std::to_string(budget));
        total *= c.get_ui();
        lists[j] = all_subsets(n, model.sizes[j], list_count[j]);
    }
    workers = resolve_workers(workers, total);

    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(n + 1, 0));
    parallel_ranges(total, workers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> pos(ell);
        std::uint64_t idx = begin;
        for (std::size_t j = 0; j < ell; ++j) {
            pos[j] = idx % list_count[j];
            idx /= list_count[j];
        }
        std::vector<std::uint32_t> stamp(n, 0);
        std::uint32_t cur = 0;
        for (std::uint64_t c = begin; c < end; ++c) {
            if (++cur == 0) {
                std::fill(stamp.begin(), stamp.end(), 0);
                cur = 1;
            }
            std::uint64_t covered = 0;
            for (std::size_t j = 0; j < ell; ++j) {
                const std::uint32_t* subset = lists[j].data() + pos[j] * model.sizes[j];
                for (std::uint64_t i = 0; i < model.sizes[j]; ++i) {
                    if (stamp[subset[i]] != cur) {
                        stamp[subset[i]] = cur;
                        ++covered;
                    }
                }
            }
            ++partial[slot][covered];
            for (std::size_t j = 0; j < ell; ++j) {
                if (++pos[j] < list_count[j]) break;
                pos[j] = 0;
            }
        }
    });

    EmpiricalDistribution out;
    for (std::uint64_t x = 0; x <= n; ++x) {
        std::uint64_t c = 0;
        for (unsigned w = 0; w < workers; ++w) c += partial[w][x];
        if (c > 0) out.add(std::int64_t(x), c);
    }
    return out;
}

// ---- samplers ----------------------------------------------------------------

EmpiricalDistribution sample_valueset(const Field& field, std::uint64_t ell, std::uint64_t r,
                                      std::uint64_t trials, std::uint64_t seed, bool nonzero_only,
                                      unsigned workers) {
    const std::uint64_t q = field.q();
    if (ell == 0 || (q - 1) % ell != 0) throw std::invalid_argument("ell must divide q-1");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    workers = resolve_workers(workers, std::max<std::uint64_t>(trials, 1));

    const std::uint64_t base = nonzero_only ? q - 1 : q;
    std::vector<EmpiricalDistribution> partial(workers);
    parallel_ranges(trials, workers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
        ValueSetCounter counter(field, ell, r);
        std::vector<Field::Elem> branches(ell);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            TrialRng rng(seed, trial);
            for (std::uint64_t i = 0; i < ell; ++i) {
                const std::uint64_t d = rng.below(base);
                branches[i] = nonzero_only ? field.exp(d) : (d == 0 ? 0 : field.exp(d - 1));
            }
            partial[slot].add(std::int64_t(counter.size_of(branches)));
        }
    });

    EmpiricalDistribution out;
    for (auto& p : partial) out.merge(p);
    return out;
}

EmpiricalDistribution sample_occupancy(std::uint64_t t, std::uint64_t ell, std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers) {
    if (t < 1 || ell < 1) throw std::invalid_argument("t and ell must be >= 1");
    const std::uint64_t boxes = t * ell;
    workers = resolve_workers(workers, std::max<std::uint64_t>(trials, 1));

    std::vector<EmpiricalDistribution> partial(workers);
    parallel_ranges(trials, workers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> stamp(boxes, 0);
        std::uint32_t cur = 0;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            TrialRng rng(seed, trial);
            ++cur;
            if (cur == 0) {  // stamp wrapped
                std::fill(stamp.begin(), stamp.end(), 0);
                cur = 1;
            }
            std::uint64_t occupied = 0;
            for (std::uint64_t i = 0; i < ell; ++i) {
                const std::uint64_t b = rng.below(boxes);
                if (stamp[b] != cur) {
                    stamp[b] = cur;
                    ++occupied;
                }
            }
            partial[slot].add(std::int64_t(boxes - occupied));
        }
    });

    EmpiricalDistribution out;
    for (auto& p : partial) out.merge(p);
    return out;
}

EmpiricalDistribution sample_union(const UnionModel& model, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers) {
    const std::uint64_t n = model.n;
    workers = resolve_workers(workers, std::max<std::uint64_t>(trials, 1));

    std::vector<EmpiricalDistribution> partial(workers);
    parallel_ranges(trials, workers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> stamp(n, 0);
        std::uint32_t cur = 0;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            TrialRng rng(seed, trial);
            ++cur;
            if (cur == 0) {
                std::fill(stamp.begin(), stamp.end(), 0);
                cur = 1;
            }
            std::uint64_t covered = 0;
            for (const std::uint64_t m : model.sizes) {
                // fixed-order selection sampling: element j is taken with
                // probability (remaining picks)/(remaining elements)
                std::uint64_t need = m;
                for (std::uint64_t j = 0; j < n && need > 0; ++j) {
                    if (rng.below(n - j) < need) {
                        --need;
                        if (stamp[j] != cur) {
                            stamp[j] = cur;
                            ++covered;
                        }
                    }
                }
            }
            partial[slot].add(std::int64_t(covered));
        }
    });

    EmpiricalDistribution out;
    for (auto& p : partial) out.merge(p);
    return out;
}

// ---- diagnostics ---------------------------------------------------------------

Rat tv_distance(const ExactDistribution& a, const ExactDistribution& b) {
    Rat acc = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a.support()[i] < b.support()[j])) {
            acc += a.probs()[i++];
        } else if (i >= a.size() || b.support()[j] < a.support()[i]) {
            acc += b.probs()[j++];
        } else {
            acc += abs(a.probs()[i] - b.probs()[j]);
            ++i;
            ++j;
        }
    }
    return acc / 2;
}

Rat tv_distance(const EmpiricalDistribution& a, const ExactDistribution& b) {
    return tv_distance(a.to_exact(), b);
}

double normal_cdf(double x) {
    // Abramowitz & Stegun 26.2.17
    const double ax = std::fabs(x);
    const double t = 1.0 / (1.0 + 0.2316419 * ax);
    const double poly =
        t * (0.319381530 +
             t * (-0.356563782 + t * (1.781477937 + t * (-1.821255978 + t * 1.330274429))));
    const double pdf = std::exp(-0.5 * ax * ax) / std::sqrt(2.0 * M_PI);
    const double upper = 1.0 - pdf * poly;
    return x >= 0 ? upper : 1.0 - upper;
}

double ks_normal(std::vector<double> samples, double mu, double sigma) {
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    if (samples.size() < 100) throw std::invalid_argument("need at least 100 samples");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = normal_cdf((samples[i] - mu) / sigma);
        d = std::max(d, std::fabs(double(i + 1) / n - cdf));
        d = std::max(d, std::fabs(cdf - double(i) / n));
    }
    return d;
}

double ks_normal(const EmpiricalDistribution& samples, double mu, double sigma) {
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    if (samples.trials() < 100) throw std::invalid_argument("need at least 100 samples");
    const double n = double(samples.trials());
    double d = 0.0;
    std::uint64_t cum = 0;
    for (const auto& [v, c] : samples.counts()) {
        const double cdf = normal_cdf((double(v) - mu) / sigma);
        d = std::max(d, std::fabs(double(cum) / n - cdf));
        cum += c;
        d = std::max(d, std::fabs(double(cum) / n - cdf));
    }
    return d;
}

HypothesisFlags check_normality_hypotheses(const AsymptoticParams& p,
                                           double concentration_threshold) {
    AsymptoticParams copy = p;
    evaluate_hypothesis_flags(copy, concentration_threshold);
    return HypothesisFlags{copy.sn_ok, copy.concentration_ok};
}

// ---- bound checks -----------------------------------------------------------------

BoundReport check_bounds(const Field& field, std::uint64_t ell_max, std::uint64_t r,
                         std::uint64_t budget, unsigned workers) {
    const std::uint64_t q = field.q();
    if (r < 1) throw std::invalid_argument("r must be >= 1");

    std::vector<std::uint64_t> ells;
    std::uint64_t grand_total = 0;
    for (std::uint64_t ell = 1; ell <= std::min(ell_max, q - 1); ++ell) {
        if ((q - 1) % ell != 0) continue;
        const std::uint64_t total = checked_pow(q, ell, budget);
        if (grand_total > budget - total)
            throw BudgetError("bound check exceeds enumeration budget");
        grand_total += total;
        ells.push_back(ell);
    }

    BoundReport report;
    for (const std::uint64_t ell : ells) {
        std::uint64_t total = 1;
        for (std::uint64_t i = 0; i < ell; ++i) total *= q;
        const unsigned nworkers = resolve_workers(workers, total);

        std::vector<BoundReport> partial(nworkers);
        parallel_ranges(total, nworkers, [&](unsigned slot, std::uint64_t begin, std::uint64_t end) {
            BoundReport& rep = partial[slot];
            ValueSetCounter counter(field, ell, r);
            CyclotomicMapping m;
            m.field = &field;
            m.r = r;
            m.ell = ell;
            m.branches.resize(ell);
            std::vector<std::uint64_t> digits(ell);
            std::uint64_t idx = begin;
            for (std::uint64_t i = 0; i < ell; ++i) {
                digits[i] = idx % q;
                m.branches[i] = digits[i] == 0 ? 0 : field.exp(digits[i] - 1);
                idx /= q;
            }
            Polynomial g;
            for (std::uint64_t tuple = begin; tuple < end; ++tuple) {
                from_cyclotomic_into(m, g);
                if (g.is_zero()) {
                    ++rep.skipped_constant;
                } else {
                    const std::uint64_t size = counter.size_of(m.branches);
                    const std::uint64_t d = std::uint64_t(g.degree());
                    const IndexShape shape = poly_index_shape(g);
                    ++rep.checked;
                    auto flag = [&](const char* rule) {
                        if (rep.violations.size() < 1000)
                            rep.violations.push_back(BoundViolation{
                                ell, tuple, size, std::int64_t(d), shape.ell, rule});
                    };
                    if (size == q) {
                        ++rep.pp_count;
                    } else {
                        // the index bound acts through the cosets of modulus
                        // t*ell, t = gcd(r, s); t = 1 gives q - (q-1)/ell
                        const std::uint64_t tl = std::gcd(shape.r, shape.s) * shape.ell;
                        if (size > q - (q - 1) / tl) flag("index bound |V| <= q - (q-1)/(t*ell)");
                        if (size > q - (q - 1 + d - 1) / d) flag("degree bound |V| <= q - (q-1)/d");
                    }
                    if (size < (q + d - 1) / d) flag("minimal value set |V| >= ceil(q/d)");
                }
                for (std::uint64_t i = 0; i < ell; ++i) {
                    if (++digits[i] < q) {
                        m.branches[i] = digits[i] == 0 ? 0 : field.exp(digits[i] - 1);
                        break;
                    }
                    digits[i] = 0;
                    m.branches[i] = 0;
                }
            }
        });
        for (auto& rep : partial) {
            report.checked += rep.checked;
            report.pp_count += rep.pp_count;
            report.skipped_constant += rep.skipped_constant;
            for (auto& v : rep.violations)
                if (report.violations.size() < 1000) report.violations.push_back(std::move(v));
        }
    }
    return report;
}

}  // namespace vslab
