#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace smlorbit {

// Exponent vector; the length always equals the ambient ring's variable count.
struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

    std::size_t nvars() const { return e.size(); }
    long total_degree() const {
        return std::accumulate(e.begin(), e.end(), 0L,
                               [](long s, std::uint32_t x) { return s + static_cast<long>(x); });
    }
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Monomial mul(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    // quotient of *this by o; o must divide *this
    Monomial div(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e.size(); ++i)
            if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }
    bool operator==(const Monomial&) const = default;
};

// Total, multiplicative monomial orders. Elimination(block) puts the first
// `block` variables in a dominant grevlex block ahead of a grevlex tail, so a
// Groebner basis under it intersects the tail subring correctly.
struct MonomialOrder {
    enum class Kind { lex, grevlex, elimination };
    Kind kind = Kind::grevlex;
    int block = 0;

    static MonomialOrder lex() { return {Kind::lex, 0}; }
    static MonomialOrder grevlex() { return {Kind::grevlex, 0}; }
    static MonomialOrder elimination(int block) { return {Kind::elimination, block}; }

    bool operator==(const MonomialOrder&) const = default;

    // strong ordering with "greater" meaning later in the order (bigger monomial)
    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        switch (kind) {
        case Kind::lex:
            return lex_cmp(a.e, b.e, 0, a.e.size());
        case Kind::grevlex:
            return grevlex_cmp(a.e, b.e, 0, a.e.size());
        case Kind::elimination: {
            std::size_t k = static_cast<std::size_t>(block);
            auto head = grevlex_cmp(a.e, b.e, 0, k);
            if (head != std::strong_ordering::equal) return head;
            return grevlex_cmp(a.e, b.e, k, a.e.size());
        }
        }
        return std::strong_ordering::equal;
    }
    bool less(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }
    bool greater(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == std::strong_ordering::greater;
    }

    std::string str() const {
        switch (kind) {
        case Kind::lex: return "lex";
        case Kind::grevlex: return "grevlex";
        case Kind::elimination: return "elimination:" + std::to_string(block);
        }
        return "?";
    }

private:
    static std::strong_ordering lex_cmp(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b,
                                        std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
    }
    static std::strong_ordering grevlex_cmp(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b,
                                            std::size_t lo, std::size_t hi) {
        long da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da <=> db;
        // equal degree: last differing exponent, smaller wins
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return b[i] <=> a[i];
        return std::strong_ordering::equal;
    }
};

} // namespace smlorbit
