#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace knotsurg {

using Integer = mpz_class;

// Exact rational number in lowest terms, denominator positive.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(const Integer& v) : q_(v) {}
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class& v) : q_(v) { q_.canonicalize(); }

    // Accepts "n", "-n", "n/d".
    static Rational parse(const std::string& s);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational pow(int e) const;
    Rational abs() const { return Rational(::abs(q_)); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
// Rational square root if the argument is a perfect square of a rational.
bool rational_sqrt(const Rational& r, Rational& out);

// Sparse Laurent polynomial in one variable with rational coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c) { add_term(0, c); }
    static LaurentPoly monomial(int exp, const Rational& c = Rational(1));
    // Map from exponent to coefficient, e.g. {{-4,-1},{-3,1},{-1,1}}.
    static LaurentPoly from_terms(const std::map<int, Rational>& terms);

    void add_term(int exp, const Rational& c);
    Rational coeff(int exp) const;
    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_degree() const;
    int max_degree() const;

    Rational eval(const Rational& x) const;
    LaurentPoly invert() const;          // t -> 1/t
    LaurentPoly shift(int k) const;      // multiply by t^k
    LaurentPoly scale_exponents(int k) const;  // t -> t^k
    // Divide all exponents by k; throws if some exponent is not a multiple.
    LaurentPoly divide_exponents(int k) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    LaurentPoly operator-() const { return *this * Rational(-1); }
    LaurentPoly pow(unsigned e) const;
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    std::string str(const std::string& var = "t") const;

private:
    std::map<int, Rational> terms_;
};

// Power series truncated after x^order.
class TruncSeries {
public:
    explicit TruncSeries(int order = 0) : c_(static_cast<size_t>(order) + 1) {}
    TruncSeries(int order, std::vector<Rational> coeffs);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int i) const { return c_.at(static_cast<size_t>(i)); }
    Rational& operator[](int i) { return c_.at(static_cast<size_t>(i)); }
    const std::vector<Rational>& coeffs() const { return c_; }

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const Rational& k);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(TruncSeries a, const Rational& k) { return a *= k; }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

    TruncSeries derivative() const;

private:
    std::vector<Rational> c_;
};

// Series of exp(x) to the given order.
TruncSeries series_exp_x(int order);
// log(s) for s with constant term 1.
TruncSeries series_log(const TruncSeries& s);
// exp(s) for s with zero constant term.
TruncSeries series_exp(const TruncSeries& s);
// Substitutes t = exp(sign * h) into p and expands to h^order.
TruncSeries laurent_substitute_exp(const LaurentPoly& p, int sign, int order);
// Coefficient of x^i in (1/2) log(sinh(x/2) / (x/2)).
Rational modified_bernoulli(int i);

}  // namespace knotsurg
