#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vslab/cyclomap.hpp"
#include "vslab/field.hpp"

namespace vslab {

/// Polynomial over F_q of degree <= q-1, coefficient of x^e at coeffs[e],
/// no trailing zeros (the zero polynomial has an empty vector).
struct Polynomial {
    const Field* field = nullptr;
    std::vector<Field::Elem> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    std::int64_t degree() const { return std::int64_t(coeffs.size()) - 1; }
    Field::Elem at(std::size_t e) const { return e < coeffs.size() ? coeffs[e] : 0; }
};

/// Trims trailing zeros and enforces degree <= q-1.
Polynomial make_polynomial(const Field& field, std::vector<Field::Elem> coeffs);

Field::Elem eval_poly(const Polynomial& g, Field::Elem x);

/// The unique presentation g(x) = a * x^r f(x^s) + b with s = (q-1)/ell,
/// f monic of the stated shape with nonzero constant term, and
/// gcd(exponents of f, ell) = 1. ell is the index of g.
struct IndexForm {
    Field::Elem a = 0;  // leading scalar
    Field::Elem b = 0;  // constant term g(0)
    std::uint64_t r = 0;
    std::uint64_t s = 0;
    std::uint64_t ell = 0;
    std::vector<std::uint64_t> f_exponents;  // ascending, first is 0
    std::vector<Field::Elem> f_coeffs;       // matching f_exponents
};

/// Throws std::domain_error for constant polynomials (index undefined).
IndexForm index_decompose(const Polynomial& g);

/// Index ell only; same contract, no allocation. For hot loops.
std::uint64_t poly_index(const Polynomial& g);

/// (r, s, ell) of the canonical presentation without building f. For hot loops.
struct IndexShape {
    std::uint64_t r = 0;
    std::uint64_t s = 0;
    std::uint64_t ell = 0;
};
IndexShape poly_index_shape(const Polynomial& g);

/// The cyclotomic-mapping presentation of g with g(0) = 0: branch
/// coefficients a_i = a * f(gamma^{s i}). Pointwise equal to g on F_q.
CyclotomicMapping to_cyclotomic(const Polynomial& g);

/// Polynomial presentation of a mapping, reduced mod x^q - x:
/// g(x) = (1/ell) sum_i a_i x^r sum_j zeta^{-ji} x^{js}.
Polynomial from_cyclotomic(const CyclotomicMapping& m);
void from_cyclotomic_into(const CyclotomicMapping& m, Polynomial& out);

/// Comma-separated coefficients, constant term first ("0,0,0,1,0,1").
Polynomial parse_poly(const Field& field, const std::string& text);
std::string format_poly(const Polynomial& g);

}  // namespace vslab
