#include "doctest.h"

#include <numeric>
#include <set>

#include "vslab/field.hpp"

using namespace vslab;

TEST_CASE("prime field basics") {
    const Field f = Field::build(5, 1);
    CHECK(f.p() == 5);
    CHECK(f.k() == 1);
    CHECK(f.q() == 5);
    CHECK(f.modulus().empty());
    // powers of 2 mod 5 are 2,4,3,1 (order 4); no smaller residue works
    CHECK(f.gamma() == 2);
}

TEST_CASE("smallest primitive element per field") {
    CHECK(Field::build(2, 1).gamma() == 1);  // q-1 = 1
    CHECK(Field::build(5, 1).gamma() == 2);
    // 2 has order 3 mod 7; 3 runs through 3,2,6,4,5,1
    CHECK(Field::build(7, 1).gamma() == 3);
    // F_4 = F_2[x]/(x^2+x+1): x (encoded 2) has order 3
    CHECK(Field::build(2, 2).gamma() == 2);
}

TEST_CASE("extension field with supplied modulus") {
    // x^3+x+1 has no root in F_2, so no linear factor: irreducible
    const Field f = Field::build(2, 3, std::vector<Field::Elem>{1, 1, 0, 1});
    CHECK(f.q() == 8);
    CHECK(f.modulus() == std::vector<Field::Elem>{1, 1, 0, 1});
    // auto-search in constant-term-first lex order finds x^3+x^2+1 first
    CHECK(Field::build(2, 3).modulus() == std::vector<Field::Elem>{1, 0, 1, 1});
}

TEST_CASE("invalid constructions") {
    CHECK_THROWS_AS(Field::build(4, 1), std::invalid_argument);  // 4 not prime
    CHECK_THROWS_AS(Field::build(2, 3, std::vector<Field::Elem>{1, 0, 0, 1}),
                    std::invalid_argument);  // x^3+1 has root 1
    CHECK_THROWS_AS(Field::build(5, 1, std::vector<Field::Elem>{1, 1}),
                    std::invalid_argument);  // modulus meaningless for k = 1
    CHECK_THROWS_AS(Field::build(2, 25), BudgetError);            // 2^25 over default limit
    CHECK_THROWS_AS(Field::build(101, 1, std::nullopt, 50), BudgetError);
    CHECK_THROWS_AS(Field::from_order(12), std::invalid_argument);
}

TEST_CASE("from_order factors prime powers") {
    CHECK(Field::from_order(8).q() == 8);
    CHECK(Field::from_order(8).p() == 2);
    CHECK(Field::from_order(27).k() == 3);
    CHECK(Field::from_order(10007).p() == 10007);
}

TEST_CASE("dlog") {
    const Field f = Field::build(5, 1);
    CHECK(f.dlog(1) == 0);
    CHECK(f.dlog(f.gamma()) == 1);
    CHECK(f.dlog(4) == 2);  // 2^2 = 4
    CHECK_THROWS_AS(f.dlog(0), std::domain_error);
}

TEST_CASE("coset index") {
    const Field f7 = Field::build(7, 1);
    const Field f5 = Field::build(5, 1);
    // 1 is an ell-th power in every coset decomposition
    for (std::uint64_t ell : {1, 2, 3, 6}) CHECK(f7.coset_index(ell, 1) == 0);
    CHECK(f7.coset_index(2, 2) == 0);  // 3^2 = 2, even exponent
    CHECK(f5.coset_index(2, 3) == 1);  // 2^3 = 3, odd exponent
    CHECK_THROWS_AS(f7.coset_index(4, 2), std::invalid_argument);  // 4 does not divide 6
    CHECK_THROWS_AS(f7.coset_index(2, 0), std::domain_error);
}

TEST_CASE("dlog is additive") {
    for (const Field& f : {Field::build(2, 3), Field::build(3, 2)}) {
        for (std::uint64_t x = 1; x < f.q(); ++x)
            for (std::uint64_t y = 1; y < f.q(); ++y) {
                const auto lhs = f.dlog(f.mul(Field::Elem(x), Field::Elem(y)));
                const auto rhs = (f.dlog(Field::Elem(x)) + f.dlog(Field::Elem(y))) % (f.q() - 1);
                REQUIRE(lhs == rhs);
            }
    }
}

TEST_CASE("cosets partition the multiplicative group") {
    for (const Field& f : {Field::build(3, 2), Field::build(7, 1)}) {
        for (std::uint64_t ell = 1; ell <= f.q() - 1; ++ell) {
            if ((f.q() - 1) % ell != 0) continue;
            std::vector<std::uint64_t> sizes(ell, 0);
            for (std::uint64_t x = 1; x < f.q(); ++x) ++sizes[f.coset_index(ell, Field::Elem(x))];
            for (auto s : sizes) REQUIRE(s == (f.q() - 1) / ell);
        }
    }
}

TEST_CASE("construction is deterministic, primitive search idempotent") {
    const Field a = Field::build(5, 2);
    const Field b = Field::build(5, 2);
    CHECK(a.gamma() == b.gamma());
    CHECK(a.modulus() == b.modulus());
    CHECK(a.find_primitive() == a.gamma());
    CHECK(Field::build(3, 3).find_primitive() == Field::build(3, 3).gamma());
}

TEST_CASE("field axioms on F_9") {
    const Field f = Field::build(3, 2);
    for (std::uint64_t a = 0; a < 9; ++a) {
        const auto ea = Field::Elem(a);
        CHECK(f.add(ea, f.neg(ea)) == 0);
        if (a != 0) CHECK(f.mul(ea, f.inv(ea)) == 1);
        for (std::uint64_t b = 0; b < 9; ++b)
            for (std::uint64_t c = 0; c < 9; ++c) {
                const auto eb = Field::Elem(b), ec = Field::Elem(c);
                REQUIRE(f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec)));
                REQUIRE(f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)));
            }
    }
    CHECK(f.pow(f.gamma(), 8) == 1);
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 3) == 0);
}

TEST_CASE("element encoding round trip and lex order") {
    const Field f = Field::build(3, 2);
    for (std::uint64_t x = 0; x < 9; ++x) {
        CHECK(f.from_coeffs(f.coeffs_of(Field::Elem(x))) == x);
    }
    // (0,1) = x (encoded 3) precedes (1,0) = 1 in constant-term-first order
    CHECK(f.lex_less(3, 1));
    CHECK(!f.lex_less(1, 3));
}

TEST_CASE("json descriptor round trip") {
    const Field f = Field::build(3, 2);
    const Field g = Field::from_json(f.to_json());
    CHECK(g.q() == f.q());
    CHECK(g.gamma() == f.gamma());
    CHECK(g.modulus() == f.modulus());
    for (std::uint64_t a = 0; a < 9; ++a)
        for (std::uint64_t b = 0; b < 9; ++b) {
            REQUIRE(g.mul(Field::Elem(a), Field::Elem(b)) == f.mul(Field::Elem(a), Field::Elem(b)));
            REQUIRE(g.add(Field::Elem(a), Field::Elem(b)) == f.add(Field::Elem(a), Field::Elem(b)));
        }
    // a non-primitive cached gamma is rejected
    CHECK_THROWS_AS(Field::from_json(R"({"p":5,"k":1,"gamma":4})"), std::invalid_argument);
}
