#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace gentle {

// Ground field: p == 0 means the rationals, otherwise the prime field F_p.
struct Field {
    int p = 0;

    bool is_rational() const { return p == 0; }
    bool operator==(const Field&) const = default;
    std::string name() const;
    static Field parse(const std::string& text);  // "Q" or "F<p>"
};

bool is_prime(long n);

// Exact scalar in a fixed field. Values in F_p are kept as integers in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(long v, Field f = {});
    Scalar(const mpq_class& v, Field f = {});

    static Scalar zero(Field f) { return Scalar(0L, f); }
    static Scalar one(Field f) { return Scalar(1L, f); }

    Field field() const { return field_; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    void normalize();
    mpq_class v_ = 0;
    Field field_{};
};

// Sparse linear combination of basis indices.
class LinComb {
public:
    using Map = std::map<int, Scalar>;

    LinComb() = default;
    explicit LinComb(Field f) : field_(f) {}
    static LinComb basis(int idx, Field f, long c = 1);

    Field field() const { return field_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coeff(int idx) const;

    void add(int idx, const Scalar& c);
    void add(const LinComb& o, const Scalar& c);
    void add(const LinComb& o) { add(o, Scalar::one(field_)); }
    LinComb scaled(const Scalar& c) const;

    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

private:
    Map terms_;
    Field field_{};
};

}  // namespace gentle
