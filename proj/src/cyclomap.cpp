#include "vslab/cyclomap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vslab {

std::uint64_t CyclotomicMapping::t() const { return std::gcd(r, s()); }

CyclotomicMapping make_mapping(const Field& field, std::uint64_t r, std::uint64_t ell,
                               std::vector<Field::Elem> branches) {
    if (r < 1) throw std::invalid_argument("mapping order r must be >= 1");
    if (ell == 0 || (field.q() - 1) % ell != 0)
        throw std::invalid_argument("index ell must divide q-1");
    if (branches.size() != ell)
        throw std::invalid_argument("branch vector must have exactly ell entries");
    for (auto a : branches)
        if (a >= field.q()) throw std::invalid_argument("branch coefficient out of range");
    return CyclotomicMapping{&field, r, ell, std::move(branches)};
}

Field::Elem eval_map(const CyclotomicMapping& m, Field::Elem x) {
    const Field& f = *m.field;
    if (x >= f.q()) throw std::invalid_argument("element out of range");
    if (x == 0) return 0;
    std::uint64_t i = f.dlog_nonzero(x) % m.ell;
    return f.mul(m.branches[i], f.pow(x, m.r));
}

ValueSetCounter::ValueSetCounter(const Field& field, std::uint64_t ell, std::uint64_t r)
    : f_(field), ell_(ell) {
    if (ell == 0 || (field.q() - 1) % ell != 0)
        throw std::invalid_argument("index ell must divide q-1");
    if (r < 1) throw std::invalid_argument("mapping order r must be >= 1");
    s_ = (field.q() - 1) / ell;
    t_ = std::gcd(r, s_);
    tl_ = t_ * ell_;
    s_over_t_ = s_ / t_;
    ir_.resize(ell_);
    const std::uint64_t r_mod = r % tl_;
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < ell_; ++i) {
        ir_[i] = acc;  // (i*r) mod tl, built incrementally
        acc += r_mod;
        if (acc >= tl_) acc -= tl_;
    }
    stamp_.assign(tl_, 0);
}

ValueSetCounter::Detail ValueSetCounter::detail_of(std::span<const Field::Elem> branches,
                                                   std::vector<std::uint32_t>* hit_list) {
    if (branches.size() != ell_) throw std::invalid_argument("branch vector size mismatch");
    if (cur_ == UINT32_MAX) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        cur_ = 0;
    }
    ++cur_;
    Detail d;
    for (std::uint64_t i = 0; i < ell_; ++i) {
        const Field::Elem a = branches[i];
        if (a == 0) {
            d.zero_branch = true;
            continue;
        }
        const std::uint64_t res = (ir_[i] + f_.dlog_nonzero(a)) % tl_;
        if (stamp_[res] != cur_) {
            stamp_[res] = cur_;
            ++d.hits;
            if (hit_list) hit_list->push_back(std::uint32_t(res));
        }
    }
    if (hit_list) std::sort(hit_list->begin(), hit_list->end());
    return d;
}

std::uint64_t ValueSetCounter::size_of(std::span<const Field::Elem> branches) {
    return 1 + s_over_t_ * detail_of(branches).hits;
}

ValueSetReport value_set_size_fast(const CyclotomicMapping& m) {
    ValueSetCounter counter(*m.field, m.ell, m.r);
    ValueSetReport rep;
    auto d = counter.detail_of(m.branches, &rep.hit_cosets);
    rep.has_zero_branch = d.zero_branch;
    rep.size = 1 + (counter.s() / counter.t()) * d.hits;
    rep.c = d.hits + (d.zero_branch ? 1 : 0);
    return rep;
}

std::vector<Field::Elem> value_set_brute(const CyclotomicMapping& m) {
    const Field& f = *m.field;
    std::vector<std::uint8_t> seen(f.q(), 0);
    seen[0] = 1;  // eval_map(0) = 0
    const std::uint64_t r_red = m.r % (f.q() - 1);
    for (std::uint64_t x = 1; x < f.q(); ++x) {
        const std::uint64_t lg = f.dlog_nonzero(Field::Elem(x));
        const Field::Elem xr = f.exp(lg * r_red % (f.q() - 1));
        seen[f.mul(m.branches[lg % m.ell], xr)] = 1;
    }
    std::vector<Field::Elem> out;
    for (std::uint64_t v = 0; v < f.q(); ++v)
        if (seen[v]) out.push_back(Field::Elem(v));
    return out;
}

MappingSpec parse_mapping(const std::string& text) {
    MappingSpec spec;
    bool got_q = false, got_l = false, got_a = false;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("mapping field missing '=': " + part);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        try {
            if (key == "q") {
                spec.q = std::stoull(val);
                got_q = true;
            } else if (key == "l") {
                spec.ell = std::stoull(val);
                got_l = true;
            } else if (key == "r") {
                spec.r = std::stoull(val);
            } else if (key == "a") {
                std::stringstream as(val);
                std::string tok;
                while (std::getline(as, tok, ','))
                    spec.branches.push_back(Field::Elem(std::stoul(tok)));
                got_a = true;
            } else {
                throw std::invalid_argument("unknown mapping field: " + key);
            }
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("bad mapping text near '" + part + "': " + e.what());
        }
    }
    if (!got_q || !got_l || !got_a)
        throw std::invalid_argument("mapping text needs q=, l= and a= fields");
    return spec;
}

std::string format_mapping(const CyclotomicMapping& m) {
    std::string out = "q=" + std::to_string(m.field->q()) + ";l=" + std::to_string(m.ell) +
                      ";r=" + std::to_string(m.r) + ";a=";
    for (std::size_t i = 0; i < m.branches.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(m.branches[i]);
    }
    return out;
}

}  // namespace vslab
