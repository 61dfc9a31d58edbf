#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace ym2 {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Univariate polynomial over Rat, coefficients ascending, no trailing zeros.
class Poly {
public:
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(const Rat& a) {
        if (a != 0) c.push_back(a);
    }
    static Poly x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
    explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Rat& lead() const { return c.back(); }

    Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }

    Rat eval(const Rat& v) const {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * v + *it;
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    // Division with remainder; b must be non-zero.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        r = a;
        std::vector<Rat> qc;
        if (a.degree() >= b.degree()) qc.assign(a.degree() - b.degree() + 1, Rat(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Rat f = r.lead() / b.lead();
            int shift = r.degree() - b.degree();
            qc[shift] = f;
            for (size_t i = 0; i < b.c.size(); ++i) r.c[i + shift] -= f * b.c[i];
            r.trim();
        }
        q = Poly(std::move(qc));
    }

    // Content (gcd of numerators over lcm of denominators), positive.
    Rat content() const {
        if (is_zero()) return Rat(0);
        mpz_class g(0), l(1);
        for (const auto& v : c) {
            mpz_class num = v.get_num(), den = v.get_den();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        Rat r(g, l);
        r.canonicalize();
        return r;
    }

    Poly primitive() const {
        if (is_zero()) return Poly();
        Rat ct = content();
        if (lead() < 0) ct = -ct;
        Poly r = *this;
        for (auto& v : r.c) v /= ct;
        return r;
    }

    // Primitive-part Euclidean gcd, normalized primitive with positive lead.
    static Poly gcd(Poly a, Poly b) {
        a = a.primitive();
        b = b.primitive();
        while (!b.is_zero()) {
            Poly q, r;
            divmod(a, b, q, r);
            a = b;
            b = r.primitive();
        }
        return a;
    }

    std::string str(const std::string& var = "N") const;
};

// Rational function in the indeterminate N: num/den with den monic and gcd(num,den)=1.
// A degree-0 ratfun with den=1 is a plain rational; this is the universal scalar.
class ExactScalar {
    Poly num_, den_;

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("ExactScalar: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(Rat(1));
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            Poly q, r;
            Poly::divmod(num_, g, q, r);
            num_ = q;
            Poly::divmod(den_, g, q, r);
            den_ = q;
        }
        Rat lc = den_.lead();
        if (lc != 1) {
            for (auto& v : num_.c) v /= lc;
            for (auto& v : den_.c) v /= lc;
        }
    }

public:
    ExactScalar() : num_(), den_(Poly(Rat(1))) {}
    ExactScalar(const Rat& r) : num_(Poly(r)), den_(Poly(Rat(1))) {}
    ExactScalar(long v) : ExactScalar(Rat(v)) {}
    ExactScalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static ExactScalar N() { return ExactScalar(Poly::x(), Poly(Rat(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.degree() <= 0 && den_.degree() <= 0; }

    Rat to_rat() const {
        if (!is_rational()) throw std::domain_error("ExactScalar: not a plain rational");
        return num_.coeff(0);  // den is the monic constant 1
    }

    Rat specialize(const Rat& n0) const {
        Rat d = den_.eval(n0);
        if (d == 0) throw std::domain_error("ExactScalar: denominator vanishes at specialization point");
        return num_.eval(n0) / d;
    }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        return ExactScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
        return ExactScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    ExactScalar operator-() const {
        ExactScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        return ExactScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        if (b.is_zero()) throw std::domain_error("ExactScalar: division by zero");
        return ExactScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    ExactScalar inverse() const { return ExactScalar(Rat(1)) / *this; }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    std::string str() const;
};

inline std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        Rat v = coeff(static_cast<size_t>(i));
        if (v == 0) continue;
        if (!s.empty()) s += (v > 0 ? " + " : " - ");
        else if (v < 0) s += "-";
        Rat a = abs(v);
        bool unit = (a == 1);
        if (i == 0 || !unit) s += a.get_str();
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

inline std::string ExactScalar::str() const {
    if (den_.degree() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace ym2
