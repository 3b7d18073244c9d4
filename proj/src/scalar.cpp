#include "gentle/scalar.hpp"

#include "gentle/errors.hpp"

#include <cctype>

namespace gentle {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string Field::name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

Field Field::parse(const std::string& text) {
    if (text == "Q") return Field{0};
    if (text.size() >= 2 && text[0] == 'F') {
        for (std::size_t i = 1; i < text.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw InputError("malformed field '" + text + "'");
        long p = std::stol(text.substr(1));
        if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
        if (p == 2) throw InputError("characteristic 2 is not supported");
        return Field{static_cast<int>(p)};
    }
    throw InputError("malformed field '" + text + "' (expected Q or F<p>)");
}

Scalar::Scalar(long v, Field f) : v_(v), field_(f) { normalize(); }
Scalar::Scalar(const mpq_class& v, Field f) : v_(v), field_(f) { normalize(); }

void Scalar::normalize() {
    if (field_.p == 0) {
        v_.canonicalize();
        return;
    }
    mpz_class p = field_.p;
    mpz_class num = v_.get_num() % p;
    mpz_class den = v_.get_den() % p;
    if (den == 0) throw MathError("denominator divisible by the characteristic " + std::to_string(field_.p));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    if (r < 0) r += p;
    v_ = mpq_class(r);
}

static void check_same(const Scalar& a, const Scalar& b) {
    if (a.field() != b.field()) throw MathError("scalar field mismatch");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(*this, o);
    return Scalar(mpq_class(v_ + o.v_), field_);
}
Scalar Scalar::operator-(const Scalar& o) const {
    check_same(*this, o);
    return Scalar(mpq_class(v_ - o.v_), field_);
}
Scalar Scalar::operator*(const Scalar& o) const {
    check_same(*this, o);
    return Scalar(mpq_class(v_ * o.v_), field_);
}
Scalar Scalar::operator-() const { return Scalar(mpq_class(-v_), field_); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw MathError("division by zero");
    return Scalar(mpq_class(1 / v_), field_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

std::string Scalar::str() const { return v_.get_str(); }

LinComb LinComb::basis(int idx, Field f, long c) {
    LinComb r(f);
    r.add(idx, Scalar(c, f));
    return r;
}

Scalar LinComb::coeff(int idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void LinComb::add(int idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(idx, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void LinComb::add(const LinComb& o, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [idx, v] : o.terms_) add(idx, v * c);
}

LinComb LinComb::scaled(const Scalar& c) const {
    LinComb r(field_);
    r.add(*this, c);
    return r;
}

}  // namespace gentle
