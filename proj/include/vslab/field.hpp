#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vslab {

/// Thrown when an enumeration or table budget would be exceeded.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultTableLimit = 1'000'000;

/// A concrete finite field F_q = F_{p^k} with eagerly built exp/dlog tables.
///
/// Elements are integers in [0, q). The base-p digits of the value, least
/// significant first, are the coefficients (constant term first) of the
/// residue polynomial; for k = 1 the element is just the residue mod p.
/// The canonical element order is lexicographic on the coefficient vector,
/// constant term first (plain integer order for prime fields).
///
/// Immutable after construction; safe to share across threads.
class Field {
public:
    using Elem = std::uint32_t;

    /// Builds F_{p^k}. The modulus (constant term first, k+1 coefficients,
    /// supplied only when k > 1) is normalized to monic; when absent, the
    /// lexicographically smallest monic irreducible of degree k is used.
    static Field build(std::uint64_t p, unsigned k,
                       const std::optional<std::vector<Elem>>& modulus = std::nullopt,
                       std::uint64_t table_limit = kDefaultTableLimit);

    /// Factors q = p^k and builds with the auto-searched modulus.
    static Field from_order(std::uint64_t q, std::uint64_t table_limit = kDefaultTableLimit);

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint64_t q() const { return q_; }
    Elem gamma() const { return gamma_; }
    /// Modulus coefficients, constant term first; empty for prime fields.
    const std::vector<Elem>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (k_ == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return Elem(s >= p_ ? s - p_ : s);
        }
        if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
        return add_digits(a, b);
    }

    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[std::size_t(dlog_[a]) + dlog_[b]];
    }

    /// Multiplicative inverse; throws std::domain_error at 0.
    Elem inv(Elem a) const;

    /// a^e with 0^0 = 1.
    Elem pow(Elem a, std::uint64_t e) const;

    /// gamma^e (e reduced mod q-1).
    Elem exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

    /// Discrete log base gamma, in [0, q-2]; throws std::domain_error at 0.
    std::uint64_t dlog(Elem x) const {
        if (x == 0) throw std::domain_error("dlog undefined at 0");
        return dlog_[x];
    }

    /// Unchecked discrete log (precondition: x != 0). For hot loops.
    std::uint32_t dlog_nonzero(Elem x) const { return dlog_[x]; }

    /// Index i of the cyclotomic coset C_i containing x, for ell | q-1.
    std::uint64_t coset_index(std::uint64_t ell, Elem x) const;

    /// Recomputes the canonically smallest primitive element from scratch.
    Elem find_primitive() const;

    bool lex_less(Elem a, Elem b) const;
    std::vector<Elem> coeffs_of(Elem x) const;
    Elem from_coeffs(const std::vector<Elem>& coeffs) const;

    /// JSON descriptor {p, k, modulus, gamma} for caching between runs.
    std::string to_json() const;
    static Field from_json(const std::string& text,
                           std::uint64_t table_limit = kDefaultTableLimit);

private:
    Field() = default;
    static Field build_impl(std::uint64_t p, unsigned k,
                            const std::optional<std::vector<Elem>>& modulus,
                            std::optional<Elem> gamma, std::uint64_t table_limit);
    Elem add_digits(Elem a, Elem b) const;

    std::uint64_t p_ = 0;
    unsigned k_ = 0;
    std::uint64_t q_ = 0;
    Elem gamma_ = 0;
    std::vector<Elem> modulus_;    // empty when k == 1
    std::vector<Elem> exp_;        // gamma^e for e in [0, 2(q-1)); doubled so mul skips a mod
    std::vector<std::uint32_t> dlog_;
    std::vector<Elem> add_table_;  // q*q, built for small extension fields only
};

bool is_prime(std::uint64_t n);
/// Distinct prime factors by trial division (desk scale).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace vslab
