#include "vslab/io.hpp"

#include <charconv>

#include "json.hpp"

namespace vslab {

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string csv_exact(const ExactDistribution& d) {
    std::string out = "k,numerator,denominator,float_prob\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += std::to_string(d.support()[i]);
        out += ',';
        out += d.probs()[i].get_num().get_str();
        out += ',';
        out += d.probs()[i].get_den().get_str();
        out += ',';
        out += format_double(rat_to_double(d.probs()[i]));
        out += '\n';
    }
    return out;
}

std::string csv_empirical(const EmpiricalDistribution& d) {
    std::string out = "support,count,exact_freq_num,exact_freq_den\n";
    for (const auto& [v, c] : d.counts()) {
        const Rat f = d.freq_at(v);
        out += std::to_string(v);
        out += ',';
        out += std::to_string(c);
        out += ',';
        out += f.get_num().get_str();
        out += ',';
        out += f.get_den().get_str();
        out += '\n';
    }
    return out;
}

std::string csv_moments(const MomentTable& m) {
    std::string out = "k,falling_num,falling_den,sieve_num,sieve_den,falling_float\n";
    for (std::size_t k = 0; k < m.falling_moments.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += m.falling_moments[k].get_num().get_str();
        out += ',';
        out += m.falling_moments[k].get_den().get_str();
        out += ',';
        out += m.sieve_terms[k].get_num().get_str();
        out += ',';
        out += m.sieve_terms[k].get_den().get_str();
        out += ',';
        out += format_double(rat_to_double(m.falling_moments[k]));
        out += '\n';
    }
    return out;
}

std::string csv_asymptotic(const AsymptoticParams& p) {
    std::string out = "mu,sigma2,s_n,regime_ok,sn_ok,concentration_ok,hypotheses_ok\n";
    out += format_double(p.mu) + ',' + format_double(p.sigma2) + ',' + format_double(p.s_n) + ',';
    out += std::string(p.regime_ok ? "1" : "0") + ',' + (p.sn_ok ? "1" : "0") + ',' +
           (p.concentration_ok ? "1" : "0") + ',' + (p.hypotheses_ok() ? "1" : "0") + '\n';
    return out;
}

namespace {

nlohmann::json rat_json(const Rat& r) {
    return nlohmann::json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

}  // namespace

std::string json_exact(const ExactDistribution& d, int indent) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        nlohmann::json row = rat_json(d.probs()[i]);
        row["k"] = d.support()[i];
        row["float_prob"] = rat_to_double(d.probs()[i]);
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"distribution", rows}}.dump(indent);
}

std::string json_empirical(const EmpiricalDistribution& d, int indent) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [v, c] : d.counts()) {
        nlohmann::json row = rat_json(d.freq_at(v));
        row["support"] = v;
        row["count"] = c;
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"trials", d.trials()}, {"counts", rows}}.dump(indent);
}

std::string json_moments(const MomentTable& m, int indent) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < m.falling_moments.size(); ++k) {
        rows.push_back(nlohmann::json{{"k", k},
                                      {"falling", rat_json(m.falling_moments[k])},
                                      {"sieve", rat_json(m.sieve_terms[k])},
                                      {"falling_float", rat_to_double(m.falling_moments[k])}});
    }
    return nlohmann::json{{"k_max", m.k_max}, {"moments", rows}}.dump(indent);
}

std::string json_asymptotic(const AsymptoticParams& p, int indent) {
    return nlohmann::json{{"mu", p.mu},
                          {"sigma2", p.sigma2},
                          {"s_n", p.s_n},
                          {"regime_ok", p.regime_ok},
                          {"sn_ok", p.sn_ok},
                          {"concentration_ok", p.concentration_ok},
                          {"hypotheses_ok", p.hypotheses_ok()}}
        .dump(indent);
}

}  // namespace vslab
