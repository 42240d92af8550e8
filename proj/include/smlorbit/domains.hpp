#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace smlorbit {

// Coefficient domains. Every domain exposes the same surface:
//   using Elem;            value type, self-contained
//   zero/one/add/sub/neg/mul/inv/is_zero/eq
//   from_int, from_rational, str, symbol
// Elements never normalize lazily: a stored Elem is always canonical
// (rationals in lowest terms with positive denominator, residues in
// [0, modulus), rational functions reduced with monic denominator).

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % d == 0) return n == d;
    }
    for (std::uint64_t d = 29; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

class Rationals {
public:
    using Elem = mpq_class;
    static constexpr bool is_field = true;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw Error(ErrorClass::validation, "division by zero in Q");
        return Elem(1) / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    long characteristic() const { return 0; }
    Elem from_int(long v) const { return Elem(v); }
    Elem from_rational(const mpq_class& q) const { return q; }
    std::optional<Elem> symbol(std::string_view) const { return std::nullopt; }
    std::string str(const Elem& a) const { return a.get_str(); }
    bool composite_str(const Elem&) const { return false; }
    std::string name() const { return "Q"; }
    bool same(const Rationals&) const { return true; }
};

class Integers {
public:
    using Elem = mpz_class;
    static constexpr bool is_field = false;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 1 || a == -1) return a;
        throw NotAField("Z has no inverse for " + a.get_str());
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    long characteristic() const { return 0; }
    Elem from_int(long v) const { return Elem(v); }
    Elem from_rational(const mpq_class& q) const {
        if (q.get_den() != 1)
            throw ValidationError("coefficient", "non-integer coefficient over Z: " + q.get_str());
        return q.get_num();
    }
    std::optional<Elem> symbol(std::string_view) const { return std::nullopt; }
    std::string str(const Elem& a) const { return a.get_str(); }
    bool composite_str(const Elem&) const { return false; }
    std::string name() const { return "Z"; }
    bool same(const Integers&) const { return true; }
};

class PrimeField {
public:
    using Elem = std::int64_t;
    static constexpr bool is_field = true;

    explicit PrimeField(std::int64_t p) : p_(p) {
        if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
            throw ValidationError("prime", std::to_string(p) + " is not prime");
    }

    std::int64_t p() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return ((a - b) % p_ + p_) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>(static_cast<__int128>(a) * b % p_);
    }
    Elem inv(Elem a) const {
        if (a == 0) throw Error(ErrorClass::validation, "division by zero in F_p");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            t -= q * nt; std::swap(t, nt);
            r -= q * nr; std::swap(r, nr);
        }
        return (t % p_ + p_) % p_;
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    long characteristic() const { return static_cast<long>(p_); }
    Elem from_int(long v) const { return ((v % p_) + p_) % p_; }
    Elem from_rational(const mpq_class& q) const {
        mpz_class num = q.get_num(), den = q.get_den();
        Elem n = mpz_mod_i(num), d = mpz_mod_i(den);
        if (d == 0) throw BadPrime("denominator divisible by " + std::to_string(p_));
        return mul(n, inv(d));
    }
    std::optional<Elem> symbol(std::string_view) const { return std::nullopt; }
    std::string str(Elem a) const { return std::to_string(a); }
    bool composite_str(const Elem&) const { return false; }
    std::string name() const { return "Fp:" + std::to_string(p_); }
    bool same(const PrimeField& o) const { return p_ == o.p_; }

private:
    Elem mpz_mod_i(const mpz_class& z) const {
        mpz_class r = z % p_;
        if (r < 0) r += p_;
        return static_cast<Elem>(r.get_si());
    }
    std::int64_t p_;
};

// Z/p^K Z with exact valuation bookkeeping. An element is its residue in
// [0, p^K); the valuation floor of a residue r is v_p(r) capped at K, which
// is a sound lower bound for the valuation of anything the residue
// approximates (a change by a multiple of p^K cannot lower a valuation
// below K).
class PadicRing {
public:
    using Elem = mpz_class;
    static constexpr bool is_field = false;

    PadicRing(std::int64_t p, int precision) : p_(p), prec_(precision) {
        if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
            throw ValidationError("prime", std::to_string(p) + " is not prime");
        if (precision < 1) throw ValidationError("precision", "precision must be >= 1");
        mpz_ui_pow_ui(pk_.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(precision));
    }

    std::int64_t p() const { return p_; }
    int precision() const { return prec_; }
    const mpz_class& modulus() const { return pk_; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return reduce_z(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return reduce_z(a - b); }
    Elem neg(const Elem& a) const { return reduce_z(-a); }
    Elem mul(const Elem& a, const Elem& b) const { return reduce_z(a * b); }
    Elem inv(const Elem& a) const {
        if (a % p_ == 0)
            throw Error(ErrorClass::validation, "non-unit in Z/p^K: " + a.get_str());
        mpz_class r;
        mpz_invert(r.get_mpz_t(), a.get_mpz_t(), pk_.get_mpz_t());
        return r;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    long characteristic() const { return 0; } // approximates Z_p, characteristic zero
    Elem from_int(long v) const { return reduce_z(mpz_class(v)); }
    Elem from_rational(const mpq_class& q) const {
        mpz_class den = q.get_den();
        if (den % p_ == 0)
            throw BadPrime("denominator of " + q.get_str() + " divisible by " + std::to_string(p_));
        mpz_class dinv;
        mpz_class dmod = reduce_z(den);
        mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), pk_.get_mpz_t());
        return reduce_z(q.get_num() * dinv);
    }
    std::optional<Elem> symbol(std::string_view) const { return std::nullopt; }
    std::string str(const Elem& a) const { return a.get_str(); }
    bool composite_str(const Elem&) const { return false; }
    std::string name() const { return "Zp:" + std::to_string(p_) + "^" + std::to_string(prec_); }
    bool same(const PadicRing& o) const { return p_ == o.p_ && prec_ == o.prec_; }

    // Exact valuation of the residue, capped at the precision K.
    int valuation_floor(const Elem& a) const {
        if (a == 0) return prec_;
        mpz_class r = a;
        int v = 0;
        while (v < prec_ && mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p_))) {
            r /= p_;
            ++v;
        }
        return v;
    }

    // Division by p^j; the caller must know the residue is divisible.
    Elem exact_div_pow(const Elem& a, int j) const {
        mpz_class pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(j));
        if (!mpz_divisible_p(a.get_mpz_t(), pj.get_mpz_t()))
            throw InternalDefect("residue " + a.get_str() + " not divisible by p^" + std::to_string(j));
        return a / pj;
    }

    Elem reduce_z(const mpz_class& z) const {
        mpz_class r = z % pk_;
        if (r < 0) r += pk_;
        return r;
    }

private:
    std::int64_t p_;
    int prec_;
    mpz_class pk_;
};

// F_p(t): reduced fractions of univariate polynomials over F_p with monic
// denominator. Coefficient vectors are little-endian with no trailing zeros.
struct RatFunc {
    std::vector<std::int64_t> num; // empty means zero
    std::vector<std::int64_t> den; // monic, nonempty
    bool operator==(const RatFunc&) const = default;
};

class RationalFunctionField {
public:
    using Elem = RatFunc;
    static constexpr bool is_field = true;

    explicit RationalFunctionField(std::int64_t p) : fp_(p) {}

    std::int64_t p() const { return fp_.p(); }

    Elem zero() const { return Elem{{}, {1}}; }
    Elem one() const { return Elem{{1 % fp_.p()}, {1}}; }
    Elem add(const Elem& a, const Elem& b) const {
        // a.num/a.den + b.num/b.den
        auto n = poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den));
        auto d = poly_mul(a.den, b.den);
        return make(std::move(n), std::move(d));
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem neg(const Elem& a) const {
        Elem r = a;
        for (auto& c : r.num) c = fp_.neg(c);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        return make(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
    }
    Elem inv(const Elem& a) const {
        if (a.num.empty()) throw Error(ErrorClass::validation, "division by zero in F_p(t)");
        return make(std::vector<std::int64_t>(a.den), std::vector<std::int64_t>(a.num));
    }
    bool is_zero(const Elem& a) const { return a.num.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a.num == b.num && a.den == b.den; }
    long characteristic() const { return fp_.characteristic(); }
    Elem from_int(long v) const {
        auto c = fp_.from_int(v);
        if (c == 0) return zero();
        return Elem{{c}, {1}};
    }
    Elem from_rational(const mpq_class& q) const {
        auto c = fp_.from_rational(q);
        if (c == 0) return zero();
        return Elem{{c}, {1}};
    }
    std::optional<Elem> symbol(std::string_view s) const {
        if (s == "t") return Elem{{0, 1 % fp_.p()}, {1}};
        return std::nullopt;
    }
    std::string str(const Elem& a) const {
        if (a.num.empty()) return "0";
        std::string ns = poly_str(a.num);
        if (a.den.size() == 1 && a.den[0] == 1) return ns;
        std::string ds = poly_str(a.den);
        return "(" + ns + ")/(" + ds + ")";
    }
    bool composite_str(const Elem& a) const {
        if (!(a.den.size() == 1 && a.den[0] == 1)) return true;
        int nonzero = 0;
        for (auto c : a.num) nonzero += c != 0;
        return nonzero > 1;
    }
    std::string name() const { return "Fp(t):" + std::to_string(fp_.p()); }
    bool same(const RationalFunctionField& o) const { return fp_.p() == o.p(); }

private:
    PrimeField fp_;

    static void trim(std::vector<std::int64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }
    std::vector<std::int64_t> poly_add(std::vector<std::int64_t> a,
                                       const std::vector<std::int64_t>& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = fp_.add(a[i], b[i]);
        trim(a);
        return a;
    }
    std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = fp_.add(r[i + j], fp_.mul(a[i], b[j]));
        trim(r);
        return r;
    }
    // remainder and quotient of a by b (b nonzero)
    std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
    poly_divmod(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) const {
        std::vector<std::int64_t> q;
        auto lcinv = fp_.inv(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::int64_t c = fp_.mul(a.back(), lcinv);
            std::size_t shift = a.size() - b.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = fp_.add(q[shift], c);
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = fp_.sub(a[shift + i], fp_.mul(c, b[i]));
            trim(a);
        }
        trim(q);
        return {q, a};
    }
    std::vector<std::int64_t> poly_gcd(std::vector<std::int64_t> a,
                                       std::vector<std::int64_t> b) const {
        while (!b.empty()) {
            auto r = poly_divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.empty()) {
            auto lcinv = fp_.inv(a.back());
            for (auto& c : a) c = fp_.mul(c, lcinv);
        }
        return a;
    }
    Elem make(std::vector<std::int64_t> n, std::vector<std::int64_t> d) const {
        trim(n);
        trim(d);
        if (d.empty()) throw Error(ErrorClass::validation, "division by zero in F_p(t)");
        if (n.empty()) return zero();
        auto g = poly_gcd(n, d);
        if (g.size() > 1) {
            n = poly_divmod(n, g).first;
            d = poly_divmod(d, g).first;
        }
        auto lcinv = fp_.inv(d.back());
        for (auto& c : d) c = fp_.mul(c, lcinv);
        for (auto& c : n) c = fp_.mul(c, lcinv);
        return Elem{std::move(n), std::move(d)};
    }
    std::string poly_str(const std::vector<std::int64_t>& v) const {
        std::string out;
        for (std::size_t k = v.size(); k-- > 0;) {
            if (v[k] == 0) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += std::to_string(v[k]);
            } else {
                if (v[k] != 1) out += std::to_string(v[k]) + "*";
                out += "t";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }
};

} // namespace smlorbit
