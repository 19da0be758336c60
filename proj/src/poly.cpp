#include "vslab/poly.hpp"

#include <numeric>
#include <sstream>

namespace vslab {

Polynomial make_polynomial(const Field& field, std::vector<Field::Elem> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    for (auto c : coeffs)
        if (c >= field.q()) throw std::invalid_argument("coefficient out of range for this field");
    if (coeffs.size() > field.q())
        throw std::invalid_argument("polynomial degree must be <= q-1");
    return Polynomial{&field, std::move(coeffs)};
}

Field::Elem eval_poly(const Polynomial& g, Field::Elem x) {
    const Field& f = *g.field;
    if (x >= f.q()) throw std::invalid_argument("element out of range");
    Field::Elem acc = 0;
    for (std::size_t i = g.coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), g.coeffs[i]);
    return acc;
}

namespace {

// gcd of {e - r : e in support(g - b), e > r} with q-1; q-1 for monomials.
std::uint64_t support_gcd(const Polynomial& g, std::uint64_t* r_out) {
    const std::uint64_t q = g.field->q();
    std::uint64_t r = 0, s = q - 1;
    bool found_r = false;
    for (std::size_t e = 1; e < g.coeffs.size(); ++e) {
        if (g.coeffs[e] == 0) continue;
        if (!found_r) {
            r = e;
            found_r = true;
        } else {
            s = std::gcd(s, std::uint64_t(e) - r);
        }
    }
    if (!found_r) throw std::domain_error("index undefined for constant polynomial");
    if (r_out) *r_out = r;
    return s;
}

}  // namespace

std::uint64_t poly_index(const Polynomial& g) {
    return (g.field->q() - 1) / support_gcd(g, nullptr);
}

IndexShape poly_index_shape(const Polynomial& g) {
    IndexShape shape;
    shape.s = support_gcd(g, &shape.r);
    shape.ell = (g.field->q() - 1) / shape.s;
    return shape;
}

IndexForm index_decompose(const Polynomial& g) {
    const Field& f = *g.field;
    IndexForm out;
    out.b = g.at(0);
    out.s = support_gcd(g, &out.r);
    out.ell = (f.q() - 1) / out.s;
    out.a = g.coeffs.back();
    const Field::Elem a_inv = f.inv(out.a);
    for (std::size_t e = out.r; e < g.coeffs.size(); ++e) {
        if (g.coeffs[e] == 0) continue;
        out.f_exponents.push_back((std::uint64_t(e) - out.r) / out.s);
        out.f_coeffs.push_back(f.mul(g.coeffs[e], a_inv));
    }
    return out;
}

CyclotomicMapping to_cyclotomic(const Polynomial& g) {
    if (g.at(0) != 0) throw std::invalid_argument("cyclotomic presentation requires g(0) = 0");
    const Field& f = *g.field;
    const IndexForm idx = index_decompose(g);
    std::vector<Field::Elem> branches(idx.ell);
    for (std::uint64_t i = 0; i < idx.ell; ++i) {
        // a_i = a * f(zeta^i) with zeta = gamma^s
        const std::uint64_t lg = idx.s * i % (f.q() - 1);
        Field::Elem acc = 0;
        for (std::size_t j = 0; j < idx.f_exponents.size(); ++j) {
            const Field::Elem term = f.exp(lg * (idx.f_exponents[j] % (f.q() - 1)) % (f.q() - 1));
            acc = f.add(acc, f.mul(idx.f_coeffs[j], term));
        }
        branches[i] = f.mul(idx.a, acc);
    }
    return make_mapping(f, idx.r, idx.ell, std::move(branches));
}

void from_cyclotomic_into(const CyclotomicMapping& m, Polynomial& out) {
    const Field& f = *m.field;
    const std::uint64_t q = f.q();
    const std::uint64_t s = m.s();
    const std::uint64_t r_red = (m.r - 1) % (q - 1) + 1;  // same map on F_q, exponent in [1, q-1]

    out.field = &f;
    out.coeffs.assign(q, 0);

    // 1/ell in F_q: ell copies of 1 sum to ell mod p, nonzero since ell | q-1
    const Field::Elem inv_ell = f.inv(Field::Elem(m.ell % f.p()));

    std::vector<Field::Elem> zeta_pow(m.ell);
    for (std::uint64_t e = 0; e < m.ell; ++e) zeta_pow[e] = f.exp(s * e % (q - 1));

    for (std::uint64_t j = 0; j < m.ell; ++j) {
        Field::Elem acc = 0;
        for (std::uint64_t i = 0; i < m.ell; ++i) {
            const std::uint64_t e = (m.ell - j * i % m.ell) % m.ell;  // zeta^{-ji}
            acc = f.add(acc, f.mul(m.branches[i], zeta_pow[e]));
        }
        const Field::Elem c = f.mul(inv_ell, acc);
        if (c == 0) continue;
        std::uint64_t e = r_red + j * s;
        if (e >= q) e = (e - 1) % (q - 1) + 1;  // x^q = x on F_q
        out.coeffs[e] = f.add(out.coeffs[e], c);
    }
    while (!out.coeffs.empty() && out.coeffs.back() == 0) out.coeffs.pop_back();
}

Polynomial from_cyclotomic(const CyclotomicMapping& m) {
    Polynomial out;
    from_cyclotomic_into(m, out);
    return out;
}

Polynomial parse_poly(const Field& field, const std::string& text) {
    std::vector<Field::Elem> coeffs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            coeffs.push_back(Field::Elem(std::stoul(tok)));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad polynomial coefficient: '" + tok + "'");
        }
    }
    if (coeffs.empty()) throw std::invalid_argument("empty polynomial text");
    return make_polynomial(field, std::move(coeffs));
}

std::string format_poly(const Polynomial& g) {
    if (g.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(g.coeffs[i]);
    }
    return out;
}

}  // namespace vslab
