#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gpcip {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint32_t next_prime_at_least(std::uint32_t n) {
    std::uint64_t p = n < 2 ? 2 : n;
    while (!is_prime(p)) ++p;
    return static_cast<std::uint32_t>(p);
}

/// Element of the prime field GF(q). Carries its modulus; mixing moduli throws.
class Fp {
public:
    Fp() : v_(0), q_(2) {}
    Fp(std::int64_t value, std::uint32_t q) : q_(q) {
        if (q < 2) throw std::invalid_argument("field modulus must be >= 2");
        std::int64_t m = value % static_cast<std::int64_t>(q);
        if (m < 0) m += q;
        v_ = static_cast<std::uint32_t>(m);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return q_; }

    friend Fp operator+(Fp a, Fp b) {
        check_same(a, b);
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) + b.v_;
        if (s >= a.q_) s -= a.q_;
        return Fp::raw(static_cast<std::uint32_t>(s), a.q_);
    }
    friend Fp operator-(Fp a, Fp b) {
        check_same(a, b);
        std::uint64_t s = static_cast<std::uint64_t>(a.v_) + a.q_ - b.v_;
        if (s >= a.q_) s -= a.q_;
        return Fp::raw(static_cast<std::uint32_t>(s), a.q_);
    }
    friend Fp operator*(Fp a, Fp b) {
        check_same(a, b);
        std::uint64_t p = static_cast<std::uint64_t>(a.v_) * b.v_;
        return Fp::raw(static_cast<std::uint32_t>(p % a.q_), a.q_);
    }
    Fp operator-() const { return Fp::raw(v_ == 0 ? 0 : q_ - v_, q_); }

    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }

    /// x^e with the convention 0^0 = 1.
    Fp pow(std::uint64_t e) const {
        Fp r = raw(1 % q_, q_);
        Fp base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    Fp inv() const {
        if (v_ == 0) throw std::domain_error("no inverse");
        // extended Euclid on (v, q)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = q_, new_r = v_;
        while (new_r != 0) {
            std::int64_t quot = r / new_r;
            t = std::exchange(new_t, t - quot * new_t);
            r = std::exchange(new_r, r - quot * new_r);
        }
        if (r != 1) throw std::domain_error("no inverse: modulus not prime");
        if (t < 0) t += q_;
        return raw(static_cast<std::uint32_t>(t), q_);
    }

    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

    bool operator==(const Fp& o) const { return v_ == o.v_ && q_ == o.q_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    static Fp raw(std::uint32_t v, std::uint32_t q) {
        Fp e;
        e.v_ = v;
        e.q_ = q;
        return e;
    }

private:
    static void check_same(const Fp& a, const Fp& b) {
        if (a.q_ != b.q_) throw std::invalid_argument("mismatched field moduli");
    }

    std::uint32_t v_;
    std::uint32_t q_;
};

/// A message: length-m vector over GF(q). Scalars act coordinatewise.
struct MessageVec {
    std::vector<Fp> symbols;

    MessageVec() = default;
    explicit MessageVec(std::vector<Fp> s) : symbols(std::move(s)) {}
    static MessageVec zero(std::size_t m, std::uint32_t q) {
        return MessageVec(std::vector<Fp>(m, Fp(0, q)));
    }

    std::size_t size() const { return symbols.size(); }

    friend MessageVec operator+(const MessageVec& a, const MessageVec& b) {
        if (a.size() != b.size()) throw std::invalid_argument("message length mismatch");
        MessageVec r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r.symbols[i] += b.symbols[i];
        return r;
    }
    friend MessageVec operator-(const MessageVec& a, const MessageVec& b) {
        if (a.size() != b.size()) throw std::invalid_argument("message length mismatch");
        MessageVec r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r.symbols[i] -= b.symbols[i];
        return r;
    }
    friend MessageVec operator*(Fp c, const MessageVec& a) {
        MessageVec r = a;
        for (auto& s : r.symbols) s = c * s;
        return r;
    }
    MessageVec& operator+=(const MessageVec& b) { return *this = *this + b; }
    MessageVec& operator-=(const MessageVec& b) { return *this = *this - b; }

    bool operator==(const MessageVec& o) const { return symbols == o.symbols; }
};

}  // namespace gpcip
