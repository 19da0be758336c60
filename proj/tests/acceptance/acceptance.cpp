// Acceptance suite: one self-contained check per criterion, each printing a
// PASS/FAIL line. Run with no arguments for all criteria, or list numbers;
// --cli <path> points at the command-line binary for the end-to-end checks.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vslab/exact_dist.hpp"
#include "vslab/field.hpp"
#include "vslab/io.hpp"
#include "vslab/poly.hpp"
#include "vslab/simlab.hpp"
#include "vslab/union_sets.hpp"

using namespace vslab;

namespace {

std::string g_cli_path;

// ---- criterion 1: exhaustive branch enumeration equals the closed form ----

bool criterion_1() {
    bool ok = true;
    for (std::uint64_t q : {3, 4, 5, 7, 8}) {
        const Field f = Field::from_order(q);
        const auto exact = random_poly_valueset_dist(q, q - 1, 1);
        const auto emp = enumerate_branch_tuples(f, q - 1, 1, false);
        const Rat tv = tv_distance(emp, exact);
        std::printf("    q=%llu: %llu tuples, tv=%s\n", (unsigned long long)q,
                    (unsigned long long)emp.trials(), tv.get_str().c_str());
        ok &= tv == 0;
    }
    return ok;
}

// ---- criterion 2: occupancy enumeration equals the closed form --------------

bool criterion_2() {
    bool ok = true;
    std::uint64_t pairs = 0;
    for (std::uint64_t t = 1; t <= 32; ++t) {
        for (std::uint64_t ell = 1;; ++ell) {
            long double total = std::pow((long double)(t * ell), (long double)ell);
            if (total > 1e6L) break;
            const auto emp = enumerate_occupancy(t, ell);
            const auto exact = occupancy_dist(t, ell);
            if (tv_distance(emp, exact) != 0) {
                std::printf("    mismatch at t=%llu ell=%llu\n", (unsigned long long)t,
                            (unsigned long long)ell);
                ok = false;
            }
            ++pairs;
        }
    }
    std::printf("    %llu (t,ell) grid points matched exactly (t <= 32)\n",
                (unsigned long long)pairs);
    for (std::uint64_t q : {3, 5, 7}) {
        const Field f = Field::from_order(q);
        const auto emp = enumerate_branch_tuples(f, q - 1, 1, true);
        const Rat pp = make_rat(falling_factorial(q - 1, q - 1), int_pow(q - 1, q - 1));
        const bool match = emp.freq_at(std::int64_t(q)) == pp &&
                           nonzero_branch_valueset_dist(q, q - 1, 1).prob_at(std::int64_t(q)) == pp;
        std::printf("    q=%llu: PP frequency %llu/%llu == (q-1)!/(q-1)^(q-1): %s\n",
                    (unsigned long long)q, (unsigned long long)emp.count_at(std::int64_t(q)),
                    (unsigned long long)emp.trials(), match ? "yes" : "NO");
        ok &= match;
    }
    return ok;
}

// ---- criterion 3: union enumeration equals the closed form ------------------

std::vector<UnionModel> union_grid() {
    std::vector<UnionModel> models;
    for (std::uint64_t n = 1; n <= 8; ++n) {
        std::vector<std::vector<std::uint64_t>> stack{{}};
        for (std::size_t ell = 1; ell <= 3; ++ell) {
            std::vector<std::vector<std::uint64_t>> next;
            for (const auto& prefix : stack) {
                const std::uint64_t lo = prefix.empty() ? 1 : prefix.back();
                for (std::uint64_t m = lo; m <= n; ++m) {
                    auto sizes = prefix;
                    sizes.push_back(m);
                    Int prod = 1;
                    for (auto mm : sizes) prod *= binomial(n, mm);
                    if (prod > 1000000) continue;
                    models.push_back(make_union_model(n, sizes));
                    next.push_back(std::move(sizes));
                }
            }
            stack = std::move(next);
        }
    }
    return models;
}

bool criterion_3() {
    bool ok = true;
    const auto models = union_grid();
    std::uint64_t equal_checked = 0;
    for (const auto& model : models) {
        const auto emp = enumerate_union(model);
        const auto exact = union_dist(model);
        if (tv_distance(emp, exact) != 0) {
            std::printf("    union dist mismatch at n=%llu ell=%zu\n",
                        (unsigned long long)model.n, model.sizes.size());
            ok = false;
        }
        const bool equal_sizes =
            std::all_of(model.sizes.begin(), model.sizes.end(),
                        [&](std::uint64_t m) { return m == model.sizes[0]; });
        if (equal_sizes) {
            const auto [ex, vx] = bp_moments(model.n, model.sizes[0], model.sizes.size());
            Rat mean = 0, second = 0;
            for (const auto& [v, c] : emp.counts()) {
                mean += Rat(Int(v) * Int(c));
                second += Rat(Int(v) * Int(v) * Int(c));
            }
            mean /= Rat(Int(emp.trials()));
            second /= Rat(Int(emp.trials()));
            if (ex != mean || vx != second - mean * mean) {
                std::printf("    moment mismatch at n=%llu m=%llu ell=%zu\n",
                            (unsigned long long)model.n, (unsigned long long)model.sizes[0],
                            model.sizes.size());
                ok = false;
            }
            ++equal_checked;
        }
    }
    const auto [e422, v422] = bp_moments(4, 2, 2);
    ok &= e422 == 3 && v422 == Rat(1, 3);
    std::printf("    %zu models matched exactly; %llu equal-size moment checks; "
                "E(X)=3, V(X)=1/3 at n=4,m=2,ell=2: %s\n",
                models.size(), (unsigned long long)equal_checked,
                (e422 == 3 && v422 == Rat(1, 3)) ? "yes" : "NO");
    return ok;
}

// ---- criterion 4: fast value-set counting equals brute force ----------------

bool criterion_4() {
    bool ok = true;
    for (std::uint64_t q : {9, 25, 27, 101}) {
        const Field f = Field::from_order(q);
        std::uint64_t checked = 0, mismatches = 0;
        for (std::uint64_t ell = 1; ell <= q - 1; ++ell) {
            if ((q - 1) % ell != 0) continue;
            for (std::uint64_t r : {1, 2, 3}) {
                std::vector<Field::Elem> branches(ell);
                for (std::uint64_t trial = 0; trial < 10000; ++trial) {
                    TrialRng rng(0xC4000000 + q * 1000 + ell * 10 + r, trial);
                    for (auto& b : branches) b = Field::Elem(rng.below(q));
                    const auto m = make_mapping(f, r, ell, branches);
                    if (value_set_size_fast(m).size != value_set_brute(m).size()) ++mismatches;
                    ++checked;
                }
            }
        }
        std::printf("    q=%llu: %llu mappings, %llu mismatches\n", (unsigned long long)q,
                    (unsigned long long)checked, (unsigned long long)mismatches);
        ok &= mismatches == 0;
    }
    return ok;
}

// ---- criterion 5: cyclotomic round trip is the pointwise identity -----------

bool criterion_5() {
    bool ok = true;
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        const Field f = Field::from_order(q);
        std::uint64_t total = 1;
        for (std::uint64_t i = 1; i < q; ++i) total *= q;
        const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::uint64_t> bad{0};
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (total - 1) / workers + 1;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::max<std::uint64_t>(1, w * chunk);
            const std::uint64_t end = std::min(total, (w + 1) * chunk);
            threads.emplace_back([&, begin, end] {
                std::vector<Field::Elem> coeffs(q, 0);
                std::uint64_t idx = begin;
                for (std::uint64_t i = 1; i < q; ++i) {
                    coeffs[i] = Field::Elem(idx % q);
                    idx /= q;
                }
                for (std::uint64_t tuple = begin; tuple < end; ++tuple) {
                    Polynomial g{&f, coeffs};
                    while (!g.coeffs.empty() && g.coeffs.back() == 0) g.coeffs.pop_back();
                    if (!g.is_zero()) {
                        const Polynomial back = from_cyclotomic(to_cyclotomic(g));
                        for (std::uint64_t x = 0; x < q; ++x) {
                            if (eval_poly(back, Field::Elem(x)) != eval_poly(g, Field::Elem(x))) {
                                ++bad;
                                break;
                            }
                        }
                    }
                    for (std::uint64_t i = 1; i < q; ++i) {
                        if (++coeffs[i] < q) break;
                        coeffs[i] = 0;
                    }
                }
            });
        }
        for (auto& t : threads) t.join();
        std::printf("    q=%llu: %llu polynomials, %llu round-trip failures\n",
                    (unsigned long long)q, (unsigned long long)(total - 1),
                    (unsigned long long)bad.load());
        ok &= bad.load() == 0;
    }
    for (std::uint64_t q : {25, 27}) {
        const Field f = Field::from_order(q);
        std::uint64_t bad = 0;
        std::vector<Field::Elem> coeffs(q);
        for (std::uint64_t trial = 0; trial < 10000; ++trial) {
            TrialRng rng(0xC5000000 + q, trial);
            coeffs[0] = 0;
            for (std::uint64_t i = 1; i < q; ++i) coeffs[i] = Field::Elem(rng.below(q));
            const Polynomial g = make_polynomial(f, coeffs);
            if (g.is_zero()) continue;
            const Polynomial back = from_cyclotomic(to_cyclotomic(g));
            for (std::uint64_t x = 0; x < q; ++x)
                if (eval_poly(back, Field::Elem(x)) != eval_poly(g, Field::Elem(x))) {
                    ++bad;
                    break;
                }
        }
        std::printf("    q=%llu: 10000 random polynomials, %llu failures\n",
                    (unsigned long long)q, (unsigned long long)bad);
        ok &= bad == 0;
    }
    return ok;
}

// ---- criterion 6: value-set bounds over the criterion-1 enumerations --------

bool criterion_6() {
    bool ok = true;
    for (std::uint64_t q : {3, 4, 5, 7, 8}) {
        const Field f = Field::from_order(q);
        const auto rep = check_bounds(f, q - 1, 1);
        std::printf("    q=%llu: %llu mappings checked, %llu PPs, %zu violations\n",
                    (unsigned long long)q, (unsigned long long)rep.checked,
                    (unsigned long long)rep.pp_count, rep.violations.size());
        ok &= rep.violations.empty();
    }
    return ok;
}

// ---- criterion 7: Monte Carlo missing-value mean at q = 10007 ---------------

bool criterion_7() {
    const std::uint64_t q = 10007, N = 100000;
    const Field f = Field::from_order(q);
    const Rat m1 = random_poly_moment(q, q - 1, 1, 1);
    const Rat m2 = random_poly_moment(q, q - 1, 1, 2);
    const Rat var = m2 + m1 - m1 * m1;
    const double sigma = std::sqrt(rat_to_double(var));
    const double exact_mean = rat_to_double(m1);

    const auto x = sample_valueset(f, q - 1, 1, N, 4, false);
    const auto y = x.map_support([&](std::int64_t v) { return std::int64_t(q) - v; });
    const double emp_mean = y.mean();

    const double tol = 3.0 * sigma / std::sqrt(double(N));
    const double q_over_e = double(q) / std::exp(1.0);
    std::printf("    exact E(Y)=%.6f sigma=%.4f; empirical=%.6f; |diff|=%.5f (tol %.5f); "
                "q/e=%.4f rel err=%.5f\n",
                exact_mean, sigma, emp_mean, std::fabs(emp_mean - exact_mean), tol, q_over_e,
                std::fabs(emp_mean - q_over_e) / q_over_e);
    return std::fabs(emp_mean - exact_mean) <= tol &&
           std::fabs(emp_mean - q_over_e) <= 0.01 * q_over_e;
}

// ---- criterion 8: KS normality diagnostic -----------------------------------

bool criterion_8() {
    const std::uint64_t N = 10000;
    double prev = 1.0;
    bool ok = true;
    double ks_final = 1.0;
    for (std::uint64_t q : {499, 4999}) {
        const Field f = Field::from_order(q);
        const auto x = sample_valueset(f, q - 1, 1, N, 4, false);
        const auto y = x.map_support([&](std::int64_t v) { return std::int64_t(q) - v; });
        const auto pr = asymptotic_params_random_poly(q);
        const double ks = ks_normal(y, pr.mu, std::sqrt(pr.sigma2));
        std::printf("    q=%llu: KS=%.5f (mu=%.3f sigma=%.3f)\n", (unsigned long long)q, ks,
                    pr.mu, std::sqrt(pr.sigma2));
        ok &= ks <= 0.05 && ks <= prev;
        prev = ks;
        ks_final = ks;
    }
    ok &= ks_final < 0.02;  // diagnostic threshold at q = 4999
    return ok;
}

// ---- criterion 9: sieve round trip on every produced distribution -----------

bool criterion_9() {
    bool ok = true;
    std::uint64_t count = 0;
    auto check = [&](const ExactDistribution& d, std::uint64_t n) {
        const auto S = sieve_s_from_p(d, n);
        ok &= sieve_p_from_s(S) == d;
        ++count;
    };
    for (std::uint64_t q : {3, 4, 5, 7, 8})
        check(random_poly_valueset_dist(q, q - 1, 1), q);
    for (std::uint64_t t = 1; t <= 32; ++t)
        for (std::uint64_t ell = 1;; ++ell) {
            if (std::pow((long double)(t * ell), (long double)ell) > 1e6L) break;
            check(occupancy_dist(t, ell), t * ell);
        }
    for (const auto& model : union_grid()) check(union_dist(model), model.n);
    std::printf("    %llu distributions round-tripped exactly\n", (unsigned long long)count);
    return ok;
}

// ---- criterion 10: determinism across worker counts --------------------------

bool run_cli(const std::string& args, const std::string& outfile) {
    const std::string cmd = g_cli_path + " " + args + " --output " + outfile;
    return std::system(cmd.c_str()) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_10() {
    bool ok = true;

    const Field f101 = Field::from_order(101);
    const auto base = sample_valueset(f101, 100, 2, 20000, 99, false, 1);
    for (unsigned w : {2u, 3u, 4u}) {
        const auto other = sample_valueset(f101, 100, 2, 20000, 99, false, w);
        ok &= other == base && csv_empirical(other) == csv_empirical(base);
    }
    const auto occ1 = sample_occupancy(2, 50, 20000, 7, 1);
    const auto occ3 = sample_occupancy(2, 50, 20000, 7, 3);
    const UnionModel model = make_union_model(40, {3, 5, 7});
    const auto un1 = sample_union(model, 20000, 11, 1);
    const auto un3 = sample_union(model, 20000, 11, 3);
    ok &= csv_empirical(occ1) == csv_empirical(occ3) && csv_empirical(un1) == csv_empirical(un3);
    std::printf("    library samplers byte-identical across 1..4 workers: %s\n",
                ok ? "yes" : "NO");

    if (g_cli_path.empty()) {
        std::printf("    no --cli path given; end-to-end check failed\n");
        return false;
    }
    const auto tmp = std::filesystem::temp_directory_path();
    bool cli_ok = true;
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"sample valueset --q 101 --l 100 --r 2 --trials 20000 --seed 99", "vs"},
        {"sample occupancy --t 2 --l 50 --trials 20000 --seed 7", "occ"},
        {"sample union --n 40 --sizes 3,5,7 --trials 20000 --seed 11", "un"},
    };
    for (const auto& [args, tag] : runs) {
        const std::string f1 = (tmp / ("vslab_acc10_" + tag + "_w1.csv")).string();
        const std::string f2 = (tmp / ("vslab_acc10_" + tag + "_w2.csv")).string();
        cli_ok &= run_cli(args + " --workers 1", f1);
        cli_ok &= run_cli(args + " --workers 2", f2);
        const std::string a = slurp(f1), b = slurp(f2);
        cli_ok &= !a.empty() && a == b;
        std::filesystem::remove(f1);
        std::filesystem::remove(f2);
    }
    std::printf("    CLI outputs byte-identical for --workers 1 vs 2: %s\n",
                cli_ok ? "yes" : "NO");
    return ok && cli_ok;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            g_cli_path = argv[++i];
        } else {
            selected.push_back(std::stoi(arg));
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "exhaustive branch tuples match the exact value-set law", criterion_1},
        {2, "exhaustive occupancy matches the exact law; PP probability exact", criterion_2},
        {3, "exhaustive unions match the exact law and equal-size moments", criterion_3},
        {4, "fast value-set size equals brute force on seeded mappings", criterion_4},
        {5, "cyclotomic round trip is the pointwise identity", criterion_5},
        {6, "value-set bounds hold with zero violations", criterion_6},
        {7, "Monte Carlo missing-value mean at q=10007", criterion_7},
        {8, "KS normality diagnostic at q=499, 4999", criterion_8},
        {9, "sieve transforms are mutually inverse on all produced laws", criterion_9},
        {10, "seeded runs are byte-identical across worker counts", criterion_10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = c.run();
        } catch (const std::exception& e) {
            std::printf("    exception: %s\n", e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s — %s (%.1fs)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    secs);
        if (!pass) ++failures;
    }
    return failures;
}
