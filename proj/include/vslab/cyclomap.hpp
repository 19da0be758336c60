#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vslab/field.hpp"

namespace vslab {

/// An r-th order cyclotomic mapping of index ell: x = 0 maps to 0, and
/// x in the coset C_i maps to branches[i] * x^r.
struct CyclotomicMapping {
    const Field* field = nullptr;
    std::uint64_t r = 1;
    std::uint64_t ell = 1;
    std::vector<Field::Elem> branches;  // a_0..a_{ell-1}, zeros allowed

    std::uint64_t s() const { return (field->q() - 1) / ell; }
    std::uint64_t t() const;  // gcd(r, s)
};

/// Validates ell | q-1, r >= 1 and the branch vector length.
CyclotomicMapping make_mapping(const Field& field, std::uint64_t r, std::uint64_t ell,
                               std::vector<Field::Elem> branches);

Field::Elem eval_map(const CyclotomicMapping& m, Field::Elem x);

struct ValueSetReport {
    std::uint64_t size = 0;           // |V_g|
    std::uint64_t c = 0;              // distinct images g(C_i), {0} included if hit
    std::vector<std::uint32_t> hit_cosets;  // residues mod t*ell covered by nonzero branches
    bool has_zero_branch = false;
};

/// Exact |V_g| by coset counting: the value set is {0} plus whole cosets of
/// the index-(t*ell) subgroup, one per distinct residue of dlog(gamma^{ir} a_i)
/// mod t*ell over the nonzero branches.
ValueSetReport value_set_size_fast(const CyclotomicMapping& m);

/// Brute-force oracle: {eval_map(x) : x in F_q}, ascending by encoding.
std::vector<Field::Elem> value_set_brute(const CyclotomicMapping& m);

/// Reusable coset-residue counter for one (field, ell, r); the workhorse
/// behind value_set_size_fast and the enumeration/sampling loops.
/// Not thread-safe; use one per thread.
class ValueSetCounter {
public:
    ValueSetCounter(const Field& field, std::uint64_t ell, std::uint64_t r);

    std::uint64_t s() const { return s_; }
    std::uint64_t t() const { return t_; }
    std::uint64_t tl() const { return tl_; }

    /// |V_g| for the mapping with these branches (size ell).
    std::uint64_t size_of(std::span<const Field::Elem> branches);

    struct Detail {
        std::uint32_t hits = 0;
        bool zero_branch = false;
    };
    Detail detail_of(std::span<const Field::Elem> branches,
                     std::vector<std::uint32_t>* hit_list = nullptr);

private:
    const Field& f_;
    std::uint64_t ell_, s_, t_, tl_, s_over_t_;
    std::vector<std::uint64_t> ir_;     // (i*r) mod tl
    std::vector<std::uint32_t> stamp_;
    std::uint32_t cur_ = 0;
};

/// Text form "q=..;l=..;r=..;a=a_0,a_1,...". Branches use the element
/// integer encoding.
struct MappingSpec {
    std::uint64_t q = 0, ell = 1, r = 1;
    std::vector<Field::Elem> branches;
};
MappingSpec parse_mapping(const std::string& text);
std::string format_mapping(const CyclotomicMapping& m);

}  // namespace vslab
