#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "domains.hpp"
#include "monomial.hpp"

namespace smlorbit {

template <class D>
struct Ring {
    D dom;
    std::vector<std::string> vars;
    MonomialOrder order;

    std::size_t nvars() const { return vars.size(); }
    int var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }
    bool same(const Ring& o) const {
        return vars == o.vars && order == o.order && dom.same(o.dom);
    }
};

template <class D>
using RingPtr = std::shared_ptr<const Ring<D>>;

template <class D>
RingPtr<D> make_ring(D dom, std::vector<std::string> vars,
                     MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const Ring<D>>(Ring<D>{std::move(dom), std::move(vars), order});
}

template <class D>
RingPtr<D> with_order(const RingPtr<D>& r, MonomialOrder order) {
    return make_ring<D>(r->dom, r->vars, order);
}

// Sparse polynomial; terms are kept sorted by the ring's monomial order,
// leading term first, with no zero coefficients stored.
template <class D>
class Polynomial {
public:
    using Elem = typename D::Elem;
    using Term = std::pair<Monomial, Elem>;

    Polynomial() = default;
    explicit Polynomial(RingPtr<D> ring) : ring_(std::move(ring)) {}

    static Polynomial constant(const RingPtr<D>& ring, Elem c) {
        Polynomial p(ring);
        if (!ring->dom.is_zero(c)) p.terms_.emplace_back(Monomial(ring->nvars()), std::move(c));
        return p;
    }
    static Polynomial from_int(const RingPtr<D>& ring, long v) {
        return constant(ring, ring->dom.from_int(v));
    }
    static Polynomial variable(const RingPtr<D>& ring, std::size_t idx) {
        Monomial m(ring->nvars());
        m.e[idx] = 1;
        Polynomial p(ring);
        p.terms_.emplace_back(std::move(m), ring->dom.one());
        return p;
    }
    static Polynomial monomial_term(const RingPtr<D>& ring, Monomial m, Elem c) {
        Polynomial p(ring);
        if (!ring->dom.is_zero(c)) p.terms_.emplace_back(std::move(m), std::move(c));
        return p;
    }

    const RingPtr<D>& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    Elem constant_value() const {
        if (terms_.empty()) return ring_->dom.zero();
        return terms_[0].second;
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    const Monomial& leading_monomial() const {
        require_nonzero();
        return terms_.front().first;
    }
    const Elem& leading_coeff() const {
        require_nonzero();
        return terms_.front().second;
    }

    bool equals(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (!(terms_[i].first == o.terms_[i].first)) return false;
            if (!ring_->dom.eq(terms_[i].second, o.terms_[i].second)) return false;
        }
        return true;
    }

    Polynomial add(const Polynomial& o) const {
        check_ring(o);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        const auto& dom = ring_->dom;
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            auto cmp = ring_->order.compare(terms_[i].first, o.terms_[j].first);
            if (cmp == std::strong_ordering::greater) {
                r.terms_.push_back(terms_[i++]);
            } else if (cmp == std::strong_ordering::less) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                Elem c = dom.add(terms_[i].second, o.terms_[j].second);
                if (!dom.is_zero(c)) r.terms_.emplace_back(terms_[i].first, std::move(c));
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Polynomial neg() const {
        Polynomial r(*this);
        for (auto& [m, c] : r.terms_) c = ring_->dom.neg(c);
        return r;
    }

    Polynomial sub(const Polynomial& o) const { return add(o.neg()); }

    Polynomial scalar_mul(const Elem& s) const {
        const auto& dom = ring_->dom;
        Polynomial r(ring_);
        if (dom.is_zero(s)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Elem nc = dom.mul(c, s);
            if (!dom.is_zero(nc)) r.terms_.emplace_back(m, std::move(nc));
        }
        return r;
    }

    // product of (m, c) with *this, merged into an accumulator map
    Polynomial mul(const Polynomial& o) const {
        check_ring(o);
        const auto& dom = ring_->dom;
        auto cmp = [ord = ring_->order](const Monomial& a, const Monomial& b) {
            return ord.greater(a, b); // descending
        };
        std::map<Monomial, Elem, decltype(cmp)> acc(cmp);
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m = ma.mul(mb);
                Elem c = dom.mul(ca, cb);
                auto it = acc.find(m);
                if (it == acc.end()) {
                    if (!dom.is_zero(c)) acc.emplace(std::move(m), std::move(c));
                } else {
                    it->second = dom.add(it->second, c);
                    if (dom.is_zero(it->second)) acc.erase(it);
                }
            }
        }
        Polynomial r(ring_);
        r.terms_.assign(acc.begin(), acc.end());
        return r;
    }

    Polynomial pow(long n) const {
        if (n < 0) throw ExponentOutOfRange(0);
        Polynomial acc = from_int(ring_, 1);
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1) acc = acc.mul(base);
            n >>= 1;
            if (n) base = base.mul(base);
        }
        return acc;
    }

    Polynomial derivative(std::size_t var) const {
        const auto& dom = ring_->dom;
        Polynomial r(ring_);
        for (const auto& [m, c] : terms_) {
            if (m.e[var] == 0) continue;
            Elem nc = dom.mul(c, dom.from_int(static_cast<long>(m.e[var])));
            if (dom.is_zero(nc)) continue;
            Monomial nm = m;
            nm.e[var] -= 1;
            r.terms_.emplace_back(std::move(nm), std::move(nc));
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [ord = ring_->order](const Term& a, const Term& b) {
                      return ord.greater(a.first, b.first);
                  });
        return r;
    }

    // Generic evaluation: Ops supplies the target ring (zero/add/mul/from_coeff).
    // Drives evaluation over base-domain points and over quotient-algebra points
    // with the same code path.
    template <class Ops>
    typename Ops::Value evaluate_with(const Ops& ops,
                                      std::span<const typename Ops::Value> point) const {
        if (point.size() != ring_->nvars())
            throw ArityMismatch("evaluate: point has " + std::to_string(point.size()) +
                                " coordinates for " + std::to_string(ring_->nvars()) + " variables");
        using V = typename Ops::Value;
        // cache powers of each coordinate up to the max exponent used
        std::vector<std::vector<V>> powers(point.size());
        for (std::size_t i = 0; i < point.size(); ++i) {
            std::uint32_t maxe = 0;
            for (const auto& [m, c] : terms_) maxe = std::max(maxe, m.e[i]);
            powers[i].reserve(maxe + 1);
            powers[i].push_back(ops.one());
            for (std::uint32_t k = 1; k <= maxe; ++k)
                powers[i].push_back(ops.mul(powers[i].back(), point[i]));
        }
        V acc = ops.zero();
        for (const auto& [m, c] : terms_) {
            V term = ops.from_coeff(c);
            for (std::size_t i = 0; i < point.size(); ++i)
                if (m.e[i]) term = ops.mul(term, powers[i][m.e[i]]);
            acc = ops.add(acc, term);
        }
        return acc;
    }

    Elem evaluate(std::span<const Elem> point) const {
        struct SelfOps {
            using Value = Elem;
            const D& dom;
            Value zero() const { return dom.zero(); }
            Value one() const { return dom.one(); }
            Value add(const Value& a, const Value& b) const { return dom.add(a, b); }
            Value mul(const Value& a, const Value& b) const { return dom.mul(a, b); }
            Value from_coeff(const Elem& c) const { return c; }
        };
        return evaluate_with(SelfOps{ring_->dom}, point);
    }
    Elem evaluate(const std::vector<Elem>& point) const {
        return evaluate(std::span<const Elem>(point));
    }

    // Composition x_i -> images[i]; images live in a common target ring.
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        if (images.size() != ring_->nvars())
            throw ArityMismatch("substitute: " + std::to_string(images.size()) + " images for " +
                                std::to_string(ring_->nvars()) + " variables");
        RingPtr<D> target = images.empty() ? ring_ : images[0].ring();
        for (const auto& im : images)
            if (!im.ring()->same(*target)) throw RingMismatch("substitute images span rings");
        struct PolyOps {
            using Value = Polynomial;
            RingPtr<D> target;
            Value zero() const { return Polynomial(target); }
            Value one() const { return Polynomial::from_int(target, 1); }
            Value add(const Value& a, const Value& b) const { return a.add(b); }
            Value mul(const Value& a, const Value& b) const { return a.mul(b); }
            Value from_coeff(const Elem& c) const { return Polynomial::constant(target, c); }
        };
        return evaluate_with(PolyOps{target}, std::span<const Polynomial>(images));
    }

    // Canonical text: terms in decreasing monomial order, explicit '*' and '^'.
    std::string str() const {
        if (terms_.empty()) return "0";
        const auto& dom = ring_->dom;
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string cs = dom.str(c);
            bool negative = !cs.empty() && cs[0] == '-';
            if (first) {
                first = false;
                if (negative) {
                    out += "-";
                    cs = cs.substr(1);
                }
            } else {
                out += negative ? " - " : " + ";
                if (negative) cs = cs.substr(1);
            }
            bool has_vars = !m.is_one();
            bool coeff_is_one = !dom.composite_str(c) && cs == "1";
            std::string mono;
            for (std::size_t i = 0; i < m.e.size(); ++i) {
                if (!m.e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_->vars[i];
                if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
            }
            if (!has_vars) {
                out += dom.composite_str(c) ? wrap(cs) : cs;
            } else if (coeff_is_one) {
                out += mono;
            } else {
                out += (dom.composite_str(c) ? wrap(cs) : cs) + "*" + mono;
            }
        }
        return out;
    }

    void check_ring(const Polynomial& o) const {
        if (ring_ == o.ring_) return;
        if (!ring_ || !o.ring_ || !ring_->same(*o.ring_))
            throw RingMismatch();
    }

private:
    static std::string wrap(const std::string& s) {
        if (!s.empty() && s.front() == '(' && s.back() == ')') return s;
        return "(" + s + ")";
    }
    void require_nonzero() const {
        if (terms_.empty()) throw Error(ErrorClass::internal, "leading term of zero polynomial");
    }

    RingPtr<D> ring_;
    std::vector<Term> terms_;
};

template <class D>
Polynomial<D> operator+(const Polynomial<D>& a, const Polynomial<D>& b) { return a.add(b); }
template <class D>
Polynomial<D> operator-(const Polynomial<D>& a, const Polynomial<D>& b) { return a.sub(b); }
template <class D>
Polynomial<D> operator*(const Polynomial<D>& a, const Polynomial<D>& b) { return a.mul(b); }
template <class D>
Polynomial<D> operator-(const Polynomial<D>& a) { return a.neg(); }

} // namespace smlorbit
