#include "knotsurg/exactmath.hpp"

#include <sstream>
#include <stdexcept>

namespace knotsurg {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    auto trim = [](std::string x) {
        size_t b = x.find_first_not_of(" \t\r\n");
        size_t e = x.find_last_not_of(" \t\r\n");
        return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    std::string t = trim(s);
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    auto parse_int = [&](const std::string& x) {
        std::string y = trim(x);
        if (!y.empty() && y[0] == '+') y = y.substr(1);
        if (y.empty()) throw std::invalid_argument("bad rational literal: " + s);
        size_t start = (y[0] == '-') ? 1 : 0;
        if (start == y.size()) throw std::invalid_argument("bad rational literal: " + s);
        for (size_t i = start; i < y.size(); ++i)
            if (y[i] < '0' || y[i] > '9') throw std::invalid_argument("bad rational literal: " + s);
        return Integer(y);
    };
    auto slash = t.find('/');
    if (slash == std::string::npos) return Rational(parse_int(t));
    Integer n = parse_int(t.substr(0, slash));
    Integer d = parse_int(t.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in: " + s);
    return Rational(n, d);
}

std::string Rational::str() const { return q_.get_str(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::pow(int e) const {
    if (e < 0) return Rational(1) / pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool rational_sqrt(const Rational& r, Rational& out) {
    if (r.sign() < 0) return false;
    Integer n = r.num(), d = r.den();
    if (!is_square(n) || !is_square(d)) return false;
    out = Rational(isqrt(n), isqrt(d));
    return true;
}

// ---- LaurentPoly ----

LaurentPoly LaurentPoly::monomial(int exp, const Rational& c) {
    LaurentPoly p;
    p.add_term(exp, c);
    return p;
}

LaurentPoly LaurentPoly::from_terms(const std::map<int, Rational>& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

void LaurentPoly::add_term(int exp, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Rational LaurentPoly::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_degree() const {
    if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_degree() const {
    if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
    return terms_.rbegin()->first;
}

Rational LaurentPoly::eval(const Rational& x) const {
    Rational s(0);
    for (const auto& [e, c] : terms_) s += c * x.pow(e);
    return s;
}

LaurentPoly LaurentPoly::invert() const { return scale_exponents(-1); }

LaurentPoly LaurentPoly::shift(int k) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e + k, c);
    return p;
}

LaurentPoly LaurentPoly::scale_exponents(int k) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.add_term(e * k, c);
    return p;
}

LaurentPoly LaurentPoly::divide_exponents(int k) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) {
        if (e % k != 0) throw std::domain_error("exponent not divisible in divide_exponents");
        p.add_term(e / k, c);
    }
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) p.add_term(e1 + e2, c1 * c2);
    return p;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r(Rational(1)), base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

std::string LaurentPoly::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (mag == Rational(1));
        if (e == 0) {
            os << mag;
            continue;
        }
        if (!unit) os << mag << "*";
        os << var;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// ---- TruncSeries ----

TruncSeries::TruncSeries(int order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    c_.resize(static_cast<size_t>(order) + 1);
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    if (o.order() != order()) throw std::invalid_argument("series order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    if (o.order() != order()) throw std::invalid_argument("series order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& k) {
    for (auto& v : c_) v *= k;
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("series order mismatch");
    int n = a.order();
    TruncSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

TruncSeries TruncSeries::derivative() const {
    TruncSeries r(order());
    for (int i = 1; i <= order(); ++i) r[i - 1] = (*this)[i] * Rational(i);
    return r;
}

TruncSeries series_exp_x(int order) {
    TruncSeries r(order);
    Rational f(1);
    for (int i = 0; i <= order; ++i) {
        if (i > 0) f /= Rational(i);
        r[i] = f;
    }
    return r;
}

TruncSeries series_log(const TruncSeries& s) {
    if (s[0] != Rational(1)) throw std::domain_error("series_log needs constant term 1");
    int n = s.order();
    // l' = s'/s, solved degree by degree.
    TruncSeries d = s.derivative();
    TruncSeries q(n);  // q = s'/s
    for (int i = 0; i < n; ++i) {
        Rational v = d[i];
        for (int j = 1; j <= i; ++j) v -= s[j] * q[i - j];
        q[i] = v;
    }
    TruncSeries l(n);
    for (int i = 1; i <= n; ++i) l[i] = q[i - 1] / Rational(i);
    return l;
}

TruncSeries series_exp(const TruncSeries& s) {
    if (!s[0].is_zero()) throw std::domain_error("series_exp needs zero constant term");
    int n = s.order();
    TruncSeries e(n);
    e[0] = Rational(1);
    // e' = s' e
    for (int k = 1; k <= n; ++k) {
        Rational v(0);
        for (int j = 1; j <= k; ++j) v += Rational(j) * s[j] * e[k - j];
        e[k] = v / Rational(k);
    }
    return e;
}

TruncSeries laurent_substitute_exp(const LaurentPoly& p, int sign, int order) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (order < 0) throw std::invalid_argument("negative order");
    TruncSeries r(order);
    for (const auto& [e, c] : p.terms()) {
        Rational k(static_cast<long>(sign) * e);
        Rational term = c;
        for (int i = 0; i <= order; ++i) {
            if (i > 0) term = term * k / Rational(i);
            r[i] += term;
        }
    }
    return r;
}

Rational modified_bernoulli(int i) {
    if (i < 0) throw std::invalid_argument("negative index");
    if (i == 0) return Rational(0);
    TruncSeries s(i);
    // sinh(x/2)/(x/2) = sum (x/2)^(2n) / (2n+1)!
    for (int n = 0; 2 * n <= i; ++n)
        s[2 * n] = Rational(Integer(1), factorial(static_cast<unsigned long>(2 * n + 1))) *
                   Rational(1, 4).pow(n);
    TruncSeries l = series_log(s);
    return l[i] / Rational(2);
}

}  // namespace knotsurg
