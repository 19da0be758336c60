#include "vslab/field.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace vslab {

namespace {

// Dense coefficient vectors over F_p (constant term first), used only during
// construction, before the exp/dlog tables exist.
using Vec = std::vector<std::uint32_t>;

void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Remainder of a modulo monic m (degree >= 1).
Vec poly_rem(Vec a, const Vec& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dm; ++i) {
                std::uint64_t t = a[shift + i] + std::uint64_t(p - 1) * lead % p * m[i] % p;
                a[shift + i] = std::uint32_t(t % p);
            }
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

Vec poly_mul_mod(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Vec c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = std::uint32_t((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return poly_rem(std::move(c), m, p);
}

Vec poly_pow_mod(Vec base, std::uint64_t e, const Vec& m, std::uint64_t p) {
    Vec r{1};
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, m, p);
        base = poly_mul_mod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

bool is_one(const Vec& v) { return v.size() == 1 && v[0] == 1; }

// Monic polynomials of degree d over F_p, in lex order on (c_0..c_{d-1}).
std::vector<Vec> monic_polys(unsigned d, std::uint64_t p) {
    std::vector<Vec> out;
    Vec c(d, 0);
    for (;;) {
        Vec m(c.begin(), c.end());
        m.push_back(1);
        out.push_back(std::move(m));
        // lex successor: last coordinate varies fastest
        int i = int(d) - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) break;
        ++c[i];
    }
    return out;
}

bool is_irreducible(const Vec& m, std::uint64_t p) {
    const unsigned d = unsigned(m.size()) - 1;
    if (d == 0) return false;
    // root test catches every reducible polynomial of degree <= 3
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % p;
        if (v == 0) return false;
    }
    if (d <= 3) return true;
    for (unsigned e = 2; e <= d / 2; ++e)
        for (const Vec& g : monic_polys(e, p))
            if (poly_rem(Vec(m), g, p).empty()) return false;
    return true;
}

std::uint64_t encode(const Vec& v, std::uint64_t p) {
    std::uint64_t x = 0;
    for (std::size_t i = v.size(); i-- > 0;) x = x * p + v[i];
    return x;
}

Vec decode(std::uint64_t x, unsigned k, std::uint64_t p) {
    Vec v(k);
    for (unsigned i = 0; i < k; ++i) {
        v[i] = std::uint32_t(x % p);
        x /= p;
    }
    return v;
}

// Iteration order matching the canonical (constant-term-first) lex order:
// interpret the counter's base-p digits most-significant-digit = c_0.
std::uint64_t lex_counter_to_elem(std::uint64_t counter, unsigned k, std::uint64_t p) {
    Vec rev = decode(counter, k, p);  // rev[0] = fastest digit = c_{k-1}
    std::uint64_t x = 0;
    for (unsigned i = 0; i < k; ++i) x = x * p + rev[i];  // c_0 ends least significant
    return x;
}

bool has_order_q_minus_1(std::uint64_t cand, const Vec& modulus, std::uint64_t p, unsigned k,
                         std::uint64_t q, const std::vector<std::uint64_t>& factors) {
    Vec e = decode(cand, k, p);
    trim(e);
    if (e.empty()) return false;
    for (std::uint64_t f : factors)
        if (is_one(poly_pow_mod(e, (q - 1) / f, modulus, p))) return false;
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

Field Field::build(std::uint64_t p, unsigned k, const std::optional<std::vector<Elem>>& modulus,
                   std::uint64_t table_limit) {
    return build_impl(p, k, modulus, std::nullopt, table_limit);
}

Field Field::build_impl(std::uint64_t p, unsigned k, const std::optional<std::vector<Elem>>& modulus,
                        std::optional<Elem> gamma, std::uint64_t table_limit) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");

    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > table_limit / p) throw BudgetError("field order exceeds table limit");
        q *= p;
    }
    if (q > table_limit) throw BudgetError("field order " + std::to_string(q) + " exceeds table limit " +
                                           std::to_string(table_limit));
    if (q < 2) throw std::invalid_argument("field must have at least 2 elements");

    Field f;
    f.p_ = p;
    f.k_ = k;
    f.q_ = q;

    Vec mod_vec;
    if (k == 1) {
        if (modulus) throw std::invalid_argument("modulus is only meaningful for extension fields (k > 1)");
        mod_vec = {0, 1};  // arithmetic is plain mod p; placeholder x keeps poly_rem usable
    } else if (modulus) {
        if (modulus->size() != k + 1)
            throw std::invalid_argument("modulus must have k+1 coefficients, constant term first");
        mod_vec.assign(modulus->begin(), modulus->end());
        for (auto c : mod_vec)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
        if (mod_vec.back() == 0) throw std::invalid_argument("modulus must have degree exactly k");
        if (mod_vec.back() != 1) {
            // normalize to monic; same quotient ring
            std::uint64_t lead = mod_vec.back(), inv = 1;
            for (std::uint64_t x = 1; x < p; ++x)
                if (x * lead % p == 1) { inv = x; break; }
            for (auto& c : mod_vec) c = std::uint32_t(std::uint64_t(c) * inv % p);
        }
        if (!is_irreducible(mod_vec, p)) throw std::invalid_argument("modulus is reducible over F_p");
    } else {
        for (std::uint64_t c = 0; c < q; ++c) {
            Vec cand = decode(lex_counter_to_elem(c, k, p), k, p);
            cand.push_back(1);
            if (is_irreducible(cand, p)) {
                mod_vec = std::move(cand);
                break;
            }
        }
    }
    if (k > 1) f.modulus_.assign(mod_vec.begin(), mod_vec.end());

    const auto factors = prime_factors(q - 1);

    if (gamma) {
        if (*gamma == 0 || *gamma >= q) throw std::invalid_argument("gamma out of range");
        if (q > 2 && !has_order_q_minus_1(*gamma, mod_vec, p, k, q, factors))
            throw std::invalid_argument("supplied gamma is not primitive");
        f.gamma_ = *gamma;
    } else {
        f.gamma_ = 0;
        for (std::uint64_t c = 1; c < q; ++c) {
            std::uint64_t cand = lex_counter_to_elem(c, k, p);
            if (q == 2 ? cand == 1 : has_order_q_minus_1(cand, mod_vec, p, k, q, factors)) {
                f.gamma_ = Elem(cand);
                break;
            }
        }
    }

    // exp table doubled so mul() can index dlog(a)+dlog(b) without a mod
    f.exp_.assign(2 * (q - 1), 0);
    f.dlog_.assign(q, UINT32_MAX);
    Vec g = decode(f.gamma_, k, p);
    trim(g);
    Vec cur{1};
    for (std::uint64_t e = 0; e < q - 1; ++e) {
        Elem v = Elem(encode(cur, p));
        f.exp_[e] = v;
        f.exp_[e + (q - 1)] = v;
        if (f.dlog_[v] != UINT32_MAX) throw std::logic_error("primitive element search failed");
        f.dlog_[v] = std::uint32_t(e);
        cur = poly_mul_mod(cur, g, mod_vec, p);
    }
    if (!is_one(cur)) throw std::logic_error("gamma order is not q-1");

    if (k > 1 && q <= 1024) {
        f.add_table_.assign(std::size_t(q) * q, 0);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b)
                f.add_table_[std::size_t(a) * q + b] = f.add_digits(Elem(a), Elem(b));
    }
    return f;
}

Field Field::from_order(std::uint64_t q, std::uint64_t table_limit) {
    if (q < 2) throw std::invalid_argument("field order must be >= 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return build(p, k, std::nullopt, table_limit);
}

Field::Elem Field::add_digits(Elem a, Elem b) const {
    std::uint64_t out = 0, pw = 1, x = a, y = b;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        out += s * pw;
        pw *= p_;
        x /= p_;
        y /= p_;
    }
    return Elem(out);
}

Field::Elem Field::neg(Elem a) const {
    if (k_ == 1) return a == 0 ? 0 : Elem(p_ - a);
    std::uint64_t out = 0, pw = 1, x = a;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t d = x % p_;
        out += (d == 0 ? 0 : p_ - d) * pw;
        pw *= p_;
        x /= p_;
    }
    return Elem(out);
}

Field::Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse undefined at 0");
    return exp_[(q_ - 1 - dlog_[a]) % (q_ - 1)];
}

Field::Elem Field::pow(Elem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[std::uint64_t(dlog_[a]) * (e % (q_ - 1)) % (q_ - 1)];
}

std::uint64_t Field::coset_index(std::uint64_t ell, Elem x) const {
    if (ell == 0 || (q_ - 1) % ell != 0)
        throw std::invalid_argument("coset index requires ell | q-1");
    if (x == 0) throw std::domain_error("0 lies in no cyclotomic coset");
    return dlog_[x] % ell;
}

Field::Elem Field::find_primitive() const {
    Vec mod_vec = k_ == 1 ? Vec{0, 1} : Vec(modulus_.begin(), modulus_.end());
    const auto factors = prime_factors(q_ - 1);
    for (std::uint64_t c = 1; c < q_; ++c) {
        std::uint64_t cand = lex_counter_to_elem(c, k_, p_);
        if (q_ == 2 ? cand == 1 : has_order_q_minus_1(cand, mod_vec, p_, k_, q_, factors))
            return Elem(cand);
    }
    throw std::logic_error("no primitive element found");
}

bool Field::lex_less(Elem a, Elem b) const {
    std::uint64_t x = a, y = b;
    // compare digits from the constant term up
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t dx = x % p_, dy = y % p_;
        if (dx != dy) return dx < dy;
        x /= p_;
        y /= p_;
    }
    return false;
}

std::vector<Field::Elem> Field::coeffs_of(Elem x) const {
    std::vector<Elem> v(k_);
    std::uint64_t t = x;
    for (unsigned i = 0; i < k_; ++i) {
        v[i] = Elem(t % p_);
        t /= p_;
    }
    return v;
}

Field::Elem Field::from_coeffs(const std::vector<Elem>& coeffs) const {
    if (coeffs.size() > k_) throw std::invalid_argument("too many coefficients for this field");
    std::uint64_t x = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw std::invalid_argument("coefficient out of range");
        x = x * p_ + coeffs[i];
    }
    return Elem(x);
}

std::string Field::to_json() const {
    nlohmann::json j;
    j["p"] = p_;
    j["k"] = k_;
    if (k_ > 1) j["modulus"] = modulus_;
    j["gamma"] = gamma_;
    return j.dump();
}

Field Field::from_json(const std::string& text, std::uint64_t table_limit) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::uint64_t p = j.at("p").get<std::uint64_t>();
    unsigned k = j.at("k").get<unsigned>();
    std::optional<std::vector<Elem>> modulus;
    if (j.contains("modulus") && !j["modulus"].is_null())
        modulus = j["modulus"].get<std::vector<Elem>>();
    std::optional<Elem> gamma;
    if (j.contains("gamma")) gamma = j["gamma"].get<Elem>();
    return build_impl(p, k, modulus, gamma, table_limit);
}

}  // namespace vslab
