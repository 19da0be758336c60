// vslab: exact value-set distributions for polynomials over finite fields,
// with enumeration oracles, seeded Monte Carlo and normality diagnostics.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "vslab/exact_dist.hpp"
#include "vslab/field.hpp"
#include "vslab/io.hpp"
#include "vslab/poly.hpp"
#include "vslab/simlab.hpp"
#include "vslab/union_sets.hpp"

namespace {

using namespace vslab;

struct Options {
    std::string format = "csv";
    std::string output;
    unsigned workers = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 10000;
    std::uint64_t table_limit = kDefaultTableLimit;
    std::uint64_t exact_limit = kDefaultExactLimit;
    std::optional<std::uint64_t> budget;  // overrides every enumeration cap

    std::uint64_t q = 0, p = 0, ell = 1, r = 1, t = 1, n = 0, m = 0, k_max = 4, lmax = 0;
    unsigned k = 1;
    std::string modulus, poly, map_text, sizes, field_json;
    std::optional<std::uint64_t> x;
    bool nonzero = false;
};

Budgets resolve_budgets(const Options& opt) {
    Budgets b;
    if (const char* env = std::getenv("VSLAB_BUDGET")) {
        const std::uint64_t v = std::stoull(env);
        b.enum_occupancy = b.enum_branches = b.enum_union = v;
    }
    if (opt.budget) b.enum_occupancy = b.enum_branches = b.enum_union = *opt.budget;
    return b;
}

Field build_field(const Options& opt) {
    if (!opt.field_json.empty()) {
        std::ifstream in(opt.field_json);
        if (!in) throw std::invalid_argument("cannot read field descriptor: " + opt.field_json);
        std::stringstream ss;
        ss << in.rdbuf();
        return Field::from_json(ss.str(), opt.table_limit);
    }
    if (opt.q != 0) return Field::from_order(opt.q, opt.table_limit);
    if (opt.p == 0) throw std::invalid_argument("need --q or --p to identify the field");
    std::optional<std::vector<Field::Elem>> mod;
    if (!opt.modulus.empty()) {
        std::vector<Field::Elem> coeffs;
        std::stringstream ss(opt.modulus);
        std::string tok;
        while (std::getline(ss, tok, ',')) coeffs.push_back(Field::Elem(std::stoul(tok)));
        mod = std::move(coeffs);
    }
    return Field::build(opt.p, opt.k, mod, opt.table_limit);
}

void emit(const Options& opt, const std::string& payload) {
    if (opt.output.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.output);
    out << payload;
}

nlohmann::json manifest(const std::string& command, nlohmann::json params, const Options& opt,
                        const Budgets& budgets, double wall_ms) {
    return nlohmann::json{{"schema_version", 1},
                          {"command", command},
                          {"parameters", std::move(params)},
                          {"seed", opt.seed},
                          {"workers", opt.workers},
                          {"budgets",
                           {{"enum_occupancy", budgets.enum_occupancy},
                            {"enum_branches", budgets.enum_branches},
                            {"enum_union", budgets.enum_union}}},
                          {"wall_time_ms", wall_ms}};
}

// empirical result + manifest; CSV stays manifest-free so outputs are
// byte-identical for identical run configurations
void emit_empirical(const Options& opt, const EmpiricalDistribution& d,
                    const std::string& command, nlohmann::json params, const Budgets& budgets,
                    double wall_ms) {
    if (opt.format == "json") {
        nlohmann::json j = nlohmann::json::parse(json_empirical(d));
        j["manifest"] = manifest(command, std::move(params), opt, budgets, wall_ms);
        emit(opt, j.dump(2) + "\n");
    } else {
        emit(opt, csv_empirical(d));
    }
}

void emit_exact(const Options& opt, const ExactDistribution& d) {
    emit(opt, opt.format == "json" ? json_exact(d) + "\n" : csv_exact(d));
}

void emit_moments(const Options& opt, const MomentTable& m) {
    emit(opt, opt.format == "json" ? json_moments(m) + "\n" : csv_moments(m));
}

void emit_asymptotic(const Options& opt, const AsymptoticParams& p) {
    emit(opt, opt.format == "json" ? json_asymptotic(p) + "\n" : csv_asymptotic(p));
}

UnionModel model_from(const Options& opt) {
    return make_union_model(opt.n, parse_sizes(opt.sizes));
}

int dispatch(const std::string& cmd, const Options& opt) {
    const Budgets budgets = resolve_budgets(opt);
    const auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    if (cmd == "field.build") {
        emit(opt, build_field(opt).to_json() + "\n");
    } else if (cmd == "poly.index") {
        const Field f = build_field(opt);
        const Polynomial g = parse_poly(f, opt.poly);
        const IndexForm ix = index_decompose(g);
        if (opt.format == "json") {
            nlohmann::json j{{"r", ix.r},         {"s", ix.s},
                             {"ell", ix.ell},     {"a", ix.a},
                             {"b", ix.b},         {"f_exponents", ix.f_exponents},
                             {"f_coeffs", ix.f_coeffs}};
            emit(opt, j.dump(2) + "\n");
        } else {
            std::string fe, fc;
            for (std::size_t i = 0; i < ix.f_exponents.size(); ++i) {
                if (i) fe += ';', fc += ';';
                fe += std::to_string(ix.f_exponents[i]);
                fc += std::to_string(ix.f_coeffs[i]);
            }
            emit(opt, "r,s,ell,a,b,f_exponents,f_coeffs\n" + std::to_string(ix.r) + ',' +
                          std::to_string(ix.s) + ',' + std::to_string(ix.ell) + ',' +
                          std::to_string(ix.a) + ',' + std::to_string(ix.b) + ',' + fe + ',' + fc +
                          '\n');
        }
    } else if (cmd == "poly.valueset") {
        const Field f = build_field(opt);
        const Polynomial g = parse_poly(f, opt.poly);
        // |V_g| = |V_{g - g(0)}|; the shifted polynomial is a cyclotomic mapping
        std::vector<Field::Elem> shifted = g.coeffs;
        if (!shifted.empty()) shifted[0] = 0;
        const Polynomial g0 = make_polynomial(f, std::move(shifted));
        const CyclotomicMapping m = to_cyclotomic(g0);
        const ValueSetReport rep = value_set_size_fast(m);
        std::vector<std::uint8_t> seen(f.q(), 0);
        std::uint64_t brute = 0;
        for (std::uint64_t xv = 0; xv < f.q(); ++xv) {
            const Field::Elem v = eval_poly(g, Field::Elem(xv));
            if (!seen[v]) {
                seen[v] = 1;
                ++brute;
            }
        }
        if (opt.format == "json") {
            nlohmann::json j{{"size", rep.size},
                             {"brute_size", brute},
                             {"c", rep.c},
                             {"is_pp", rep.size == f.q()},
                             {"has_zero_branch", rep.has_zero_branch},
                             {"r", m.r},
                             {"s", m.s()},
                             {"ell", m.ell},
                             {"t", m.t()},
                             {"hit_cosets", rep.hit_cosets}};
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, "size,brute_size,c,is_pp,has_zero_branch,r,s,ell,t\n" +
                          std::to_string(rep.size) + ',' + std::to_string(brute) + ',' +
                          std::to_string(rep.c) + ',' + (rep.size == f.q() ? "1" : "0") + ',' +
                          (rep.has_zero_branch ? "1" : "0") + ',' + std::to_string(m.r) + ',' +
                          std::to_string(m.s()) + ',' + std::to_string(m.ell) + ',' +
                          std::to_string(m.t()) + '\n');
        }
    } else if (cmd == "map.eval") {
        const MappingSpec spec = parse_mapping(opt.map_text);
        const Field f = Field::from_order(spec.q, opt.table_limit);
        const CyclotomicMapping m = make_mapping(f, spec.r, spec.ell, spec.branches);
        std::string out = "x,gx\n";
        if (opt.x) {
            out += std::to_string(*opt.x) + ',' +
                   std::to_string(eval_map(m, Field::Elem(*opt.x))) + '\n';
        } else {
            for (std::uint64_t xv = 0; xv < f.q(); ++xv)
                out += std::to_string(xv) + ',' +
                       std::to_string(eval_map(m, Field::Elem(xv))) + '\n';
        }
        if (opt.format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            if (opt.x) {
                rows.push_back({{"x", *opt.x}, {"gx", eval_map(m, Field::Elem(*opt.x))}});
            } else {
                for (std::uint64_t xv = 0; xv < f.q(); ++xv)
                    rows.push_back({{"x", xv}, {"gx", eval_map(m, Field::Elem(xv))}});
            }
            emit(opt, nlohmann::json{{"map", format_mapping(m)}, {"values", rows}}.dump(2) + "\n");
        } else {
            emit(opt, out);
        }
    } else if (cmd == "dist.occupancy") {
        emit_exact(opt, occupancy_dist(opt.t, opt.ell, opt.exact_limit));
    } else if (cmd == "dist.valueset") {
        emit_exact(opt, opt.nonzero
                            ? nonzero_branch_valueset_dist(opt.q, opt.ell, opt.r, opt.exact_limit)
                            : random_poly_valueset_dist(opt.q, opt.ell, opt.r, opt.exact_limit));
    } else if (cmd == "dist.union") {
        emit_exact(opt, union_dist(model_from(opt), opt.exact_limit));
    } else if (cmd == "moments.occupancy") {
        emit_moments(opt, occupancy_moment_table(opt.t, opt.ell, opt.k_max));
    } else if (cmd == "moments.valueset") {
        emit_moments(opt, random_poly_moment_table(opt.q, opt.ell, opt.r, opt.k_max));
    } else if (cmd == "moments.union") {
        emit_moments(opt, union_moment_table(model_from(opt), opt.k_max));
    } else if (cmd == "moments.bp") {
        const auto [ex, vx] = bp_moments(opt.n, opt.m, opt.ell);
        if (opt.format == "json") {
            nlohmann::json j{{"n", opt.n},
                             {"m", opt.m},
                             {"ell", opt.ell},
                             {"ex", {{"num", ex.get_num().get_str()}, {"den", ex.get_den().get_str()}}},
                             {"vx", {{"num", vx.get_num().get_str()}, {"den", vx.get_den().get_str()}}},
                             {"ex_float", rat_to_double(ex)},
                             {"vx_float", rat_to_double(vx)}};
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, "n,m,ell,ex_num,ex_den,vx_num,vx_den,ex_float,vx_float\n" +
                          std::to_string(opt.n) + ',' + std::to_string(opt.m) + ',' +
                          std::to_string(opt.ell) + ',' + ex.get_num().get_str() + ',' +
                          ex.get_den().get_str() + ',' + vx.get_num().get_str() + ',' +
                          vx.get_den().get_str() + ',' + format_double(rat_to_double(ex)) + ',' +
                          format_double(rat_to_double(vx)) + '\n');
        }
    } else if (cmd == "asymptotic.occupancy") {
        emit_asymptotic(opt, asymptotic_params_occupancy(opt.t, opt.ell));
    } else if (cmd == "asymptotic.valueset") {
        emit_asymptotic(opt, asymptotic_params_random_poly(opt.q));
    } else if (cmd == "asymptotic.union") {
        emit_asymptotic(opt, union_asymptotic(model_from(opt)));
    } else if (cmd == "sample.valueset") {
        const Field f = build_field(opt);
        const auto d =
            sample_valueset(f, opt.ell, opt.r, opt.trials, opt.seed, opt.nonzero, opt.workers);
        emit_empirical(opt, d, "sample valueset",
                       {{"q", f.q()}, {"ell", opt.ell}, {"r", opt.r}, {"trials", opt.trials},
                        {"nonzero", opt.nonzero}},
                       budgets, wall_ms());
    } else if (cmd == "sample.occupancy") {
        const auto d = sample_occupancy(opt.t, opt.ell, opt.trials, opt.seed, opt.workers);
        emit_empirical(opt, d, "sample occupancy",
                       {{"t", opt.t}, {"ell", opt.ell}, {"trials", opt.trials}}, budgets,
                       wall_ms());
    } else if (cmd == "sample.union") {
        const auto d = sample_union(model_from(opt), opt.trials, opt.seed, opt.workers);
        emit_empirical(opt, d, "sample union",
                       {{"n", opt.n}, {"sizes", opt.sizes}, {"trials", opt.trials}}, budgets,
                       wall_ms());
    } else if (cmd == "enumerate.branches") {
        const Field f = build_field(opt);
        const auto d = enumerate_branch_tuples(f, opt.ell, opt.r, opt.nonzero,
                                               budgets.enum_branches, opt.workers);
        emit_empirical(opt, d, "enumerate branches",
                       {{"q", f.q()}, {"ell", opt.ell}, {"r", opt.r}, {"nonzero", opt.nonzero}},
                       budgets, wall_ms());
    } else if (cmd == "enumerate.occupancy") {
        const auto d = enumerate_occupancy(opt.t, opt.ell, budgets.enum_occupancy, opt.workers);
        emit_empirical(opt, d, "enumerate occupancy", {{"t", opt.t}, {"ell", opt.ell}}, budgets,
                       wall_ms());
    } else if (cmd == "enumerate.union") {
        const auto d = enumerate_union(model_from(opt), budgets.enum_union, opt.workers);
        emit_empirical(opt, d, "enumerate union", {{"n", opt.n}, {"sizes", opt.sizes}}, budgets,
                       wall_ms());
    } else if (cmd == "check-bounds") {
        const Field f = build_field(opt);
        const std::uint64_t lmax = opt.lmax == 0 ? f.q() - 1 : opt.lmax;
        const BoundReport rep = check_bounds(f, lmax, opt.r, budgets.enum_branches, opt.workers);
        std::string out = "q,r,ell_max,checked,pp_count,skipped_constant,violations\n" +
                          std::to_string(f.q()) + ',' + std::to_string(opt.r) + ',' +
                          std::to_string(lmax) + ',' + std::to_string(rep.checked) + ',' +
                          std::to_string(rep.pp_count) + ',' +
                          std::to_string(rep.skipped_constant) + ',' +
                          std::to_string(rep.violations.size()) + '\n';
        for (const auto& v : rep.violations)
            out += "violation," + std::to_string(v.ell_enum) + ',' +
                   std::to_string(v.tuple_index) + ',' + std::to_string(v.value_set_size) + ',' +
                   std::to_string(v.degree) + ',' + std::to_string(v.index) + ',' + v.rule + '\n';
        if (opt.format == "json") {
            nlohmann::json vj = nlohmann::json::array();
            for (const auto& v : rep.violations)
                vj.push_back({{"ell", v.ell_enum},
                              {"tuple", v.tuple_index},
                              {"size", v.value_set_size},
                              {"degree", v.degree},
                              {"index", v.index},
                              {"rule", v.rule}});
            nlohmann::json j{{"q", f.q()},
                             {"r", opt.r},
                             {"ell_max", lmax},
                             {"checked", rep.checked},
                             {"pp_count", rep.pp_count},
                             {"skipped_constant", rep.skipped_constant},
                             {"violations", vj}};
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, out);
        }
        if (!rep.violations.empty()) {
            std::cerr << "bound violations detected\n";
            return 3;
        }
    } else if (cmd == "ks") {
        const Field f = build_field(opt);
        const auto x_dist =
            sample_valueset(f, f.q() - 1, opt.r, opt.trials, opt.seed, false, opt.workers);
        const auto y_dist = x_dist.map_support(
            [&](std::int64_t x) { return std::int64_t(f.q()) - x; });  // missing values
        const AsymptoticParams pr = asymptotic_params_random_poly(f.q());
        const double sigma = std::sqrt(pr.sigma2);
        const double ks = ks_normal(y_dist, pr.mu, sigma);
        if (opt.format == "json") {
            nlohmann::json j{{"q", f.q()},         {"trials", opt.trials}, {"seed", opt.seed},
                             {"mu", pr.mu},        {"sigma", sigma},       {"ks", ks},
                             {"empirical_mean", y_dist.mean()}};
            j["manifest"] = manifest("ks", {{"q", f.q()}, {"r", opt.r}}, opt, budgets, wall_ms());
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, "q,trials,seed,mu,sigma,ks,empirical_mean\n" + std::to_string(f.q()) + ',' +
                          std::to_string(opt.trials) + ',' + std::to_string(opt.seed) + ',' +
                          format_double(pr.mu) + ',' + format_double(sigma) + ',' +
                          format_double(ks) + ',' + format_double(y_dist.mean()) + '\n');
        }
    } else {
        throw std::invalid_argument("unknown command: " + cmd);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"value-set distributions of polynomials over finite fields"};
    app.require_subcommand(1);

    Options opt;
    std::string selected;

    auto add_common = [&](CLI::App* sub, std::string key) {
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", opt.output, "write to file instead of stdout");
        sub->add_option("--workers", opt.workers, "worker threads (0 = all cores)");
        sub->add_option("--budget", opt.budget, "override enumeration budgets");
        sub->add_option("--table-limit", opt.table_limit, "max field size for log tables");
        sub->add_option("--exact-limit", opt.exact_limit, "max t*ell / n for exact distributions");
        sub->callback([&selected, key] { selected = key; });
        return sub;
    };
    auto add_field_opts = [&](CLI::App* sub) {
        sub->add_option("--q", opt.q, "field order (prime power)");
        sub->add_option("--p", opt.p, "field characteristic");
        sub->add_option("--k", opt.k, "extension degree");
        sub->add_option("--modulus", opt.modulus, "modulus coefficients, constant term first");
        sub->add_option("--field", opt.field_json, "cached field descriptor (JSON file)");
        return sub;
    };

    // field
    auto* field = app.add_subcommand("field", "finite field construction");
    {
        auto* sub = add_common(field->add_subcommand("build", "build and print a field descriptor"), "field.build");
        add_field_opts(sub);
    }
    // poly
    auto* poly = app.add_subcommand("poly", "polynomial analysis");
    {
        auto* sub = add_common(poly->add_subcommand("index", "index decomposition a x^r f(x^s) + b"), "poly.index");
        add_field_opts(sub);
        sub->add_option("--poly", opt.poly, "coefficients, constant term first")->required();
        auto* vs = add_common(poly->add_subcommand("valueset", "exact value set size"), "poly.valueset");
        add_field_opts(vs);
        vs->add_option("--poly", opt.poly, "coefficients, constant term first")->required();
    }
    // map
    auto* mp = app.add_subcommand("map", "cyclotomic mapping evaluation");
    {
        auto* sub = add_common(mp->add_subcommand("eval", "evaluate a mapping"), "map.eval");
        sub->add_option("--map", opt.map_text, "mapping text q=..;l=..;r=..;a=..")->required();
        sub->add_option("--x", opt.x, "evaluate at a single element");
    }
    // dist
    auto* dist = app.add_subcommand("dist", "exact distributions");
    {
        auto* oc = add_common(dist->add_subcommand("occupancy", "empty boxes: ell balls, t*ell boxes"), "dist.occupancy");
        oc->add_option("--t", opt.t)->required();
        oc->add_option("--l", opt.ell)->required();
        auto* vs = add_common(dist->add_subcommand("valueset", "|V_g| for random branches"), "dist.valueset");
        vs->add_option("--q", opt.q)->required();
        vs->add_option("--l", opt.ell)->required();
        vs->add_option("--r", opt.r);
        vs->add_flag("--nonzero", opt.nonzero, "branches drawn from F_q^*");
        auto* un = add_common(dist->add_subcommand("union", "|A_1 u ... u A_l|"), "dist.union");
        un->add_option("--n", opt.n)->required();
        un->add_option("--sizes", opt.sizes, "comma list or mxl shorthand")->required();
    }
    // moments
    auto* mo = app.add_subcommand("moments", "falling-factorial moments and sieve terms");
    {
        auto* oc = add_common(mo->add_subcommand("occupancy", ""), "moments.occupancy");
        oc->add_option("--t", opt.t)->required();
        oc->add_option("--l", opt.ell)->required();
        oc->add_option("--kmax", opt.k_max);
        auto* vs = add_common(mo->add_subcommand("valueset", ""), "moments.valueset");
        vs->add_option("--q", opt.q)->required();
        vs->add_option("--l", opt.ell)->required();
        vs->add_option("--r", opt.r);
        vs->add_option("--kmax", opt.k_max);
        auto* un = add_common(mo->add_subcommand("union", ""), "moments.union");
        un->add_option("--n", opt.n)->required();
        un->add_option("--sizes", opt.sizes)->required();
        un->add_option("--kmax", opt.k_max);
        auto* bp = add_common(mo->add_subcommand("bp", "equal-size union mean/variance"), "moments.bp");
        bp->add_option("--n", opt.n)->required();
        bp->add_option("--m", opt.m)->required();
        bp->add_option("--l", opt.ell)->required();
    }
    // asymptotic
    auto* as = app.add_subcommand("asymptotic", "normal-limit parameters");
    {
        auto* oc = add_common(as->add_subcommand("occupancy", ""), "asymptotic.occupancy");
        oc->add_option("--t", opt.t)->required();
        oc->add_option("--l", opt.ell)->required();
        auto* vs = add_common(as->add_subcommand("valueset", ""), "asymptotic.valueset");
        vs->add_option("--q", opt.q)->required();
        auto* un = add_common(as->add_subcommand("union", ""), "asymptotic.union");
        un->add_option("--n", opt.n)->required();
        un->add_option("--sizes", opt.sizes)->required();
    }
    // sample
    auto* sa = app.add_subcommand("sample", "seeded Monte Carlo");
    {
        auto* vs = add_common(sa->add_subcommand("valueset", ""), "sample.valueset");
        add_field_opts(vs);
        vs->add_option("--l", opt.ell)->required();
        vs->add_option("--r", opt.r);
        vs->add_flag("--nonzero", opt.nonzero);
        vs->add_option("--trials", opt.trials);
        vs->add_option("--seed", opt.seed);
        auto* oc = add_common(sa->add_subcommand("occupancy", ""), "sample.occupancy");
        oc->add_option("--t", opt.t)->required();
        oc->add_option("--l", opt.ell)->required();
        oc->add_option("--trials", opt.trials);
        oc->add_option("--seed", opt.seed);
        auto* un = add_common(sa->add_subcommand("union", ""), "sample.union");
        un->add_option("--n", opt.n)->required();
        un->add_option("--sizes", opt.sizes)->required();
        un->add_option("--trials", opt.trials);
        un->add_option("--seed", opt.seed);
    }
    // enumerate
    auto* en = app.add_subcommand("enumerate", "exhaustive oracles");
    {
        auto* br = add_common(en->add_subcommand("branches", ""), "enumerate.branches");
        add_field_opts(br);
        br->add_option("--l", opt.ell)->required();
        br->add_option("--r", opt.r);
        br->add_flag("--nonzero", opt.nonzero);
        auto* oc = add_common(en->add_subcommand("occupancy", ""), "enumerate.occupancy");
        oc->add_option("--t", opt.t)->required();
        oc->add_option("--l", opt.ell)->required();
        auto* un = add_common(en->add_subcommand("union", ""), "enumerate.union");
        un->add_option("--n", opt.n)->required();
        un->add_option("--sizes", opt.sizes)->required();
    }
    // check-bounds
    {
        auto* cb = add_common(app.add_subcommand("check-bounds", "value-set bound verification"), "check-bounds");
        add_field_opts(cb);
        cb->add_option("--lmax", opt.lmax, "largest index to enumerate (default q-1)");
        cb->add_option("--r", opt.r);
    }
    // ks
    {
        auto* ks = add_common(app.add_subcommand("ks", "KS normality diagnostic for missing values"), "ks");
        add_field_opts(ks);
        ks->add_option("--trials", opt.trials);
        ks->add_option("--seed", opt.seed);
        ks->add_option("--r", opt.r);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        return dispatch(selected, opt);
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
