#include "gentle/lie.hpp"

#include "gentle/errors.hpp"

#include <random>
#include <sstream>

namespace gentle {

// ---------------------------------------------------------------- Witt algebra

TruncatedWitt::TruncatedWitt(int order, Field f) : order_(order), field_(f), c_(order, Scalar::zero(f)) {
    if (order < 1) throw InputError("truncation order must be at least 1");
}

TruncatedWitt TruncatedWitt::basis(int order, int i, Field f) {
    TruncatedWitt u(order, f);
    if (i >= 1 && i <= order) u[i] = Scalar::one(f);
    return u;
}

bool TruncatedWitt::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

int TruncatedWitt::filtration() const {
    for (int i = 1; i <= order_; ++i)
        if (!(*this)[i].is_zero()) return i;
    return order_ + 1;
}

TruncatedWitt TruncatedWitt::operator+(const TruncatedWitt& o) const {
    if (o.order_ != order_) throw InputError("Witt elements of different orders");
    TruncatedWitt r(order_, field_);
    for (int i = 0; i < order_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

TruncatedWitt TruncatedWitt::operator-(const TruncatedWitt& o) const { return *this + (-o); }

TruncatedWitt TruncatedWitt::operator-() const { return scaled(Scalar(-1L, field_)); }

TruncatedWitt TruncatedWitt::scaled(const Scalar& s) const {
    TruncatedWitt r(order_, field_);
    for (int i = 0; i < order_; ++i) r.c_[i] = c_[i] * s;
    return r;
}

std::string TruncatedWitt::str() const {
    std::ostringstream os;
    bool any = false;
    for (int i = 1; i <= order_; ++i) {
        if ((*this)[i].is_zero()) continue;
        if (any) os << " + ";
        os << (*this)[i].str() << "*w" << i;
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

TruncatedWitt witt_bracket(const TruncatedWitt& u, const TruncatedWitt& v) {
    if (u.order_ != v.order_) throw InputError("Witt elements of different orders");
    const int n = u.order_;
    TruncatedWitt r(n, u.field_);
    for (int a = 1; a <= n; ++a) {
        if (u[a].is_zero()) continue;
        for (int b = 1; b <= n; ++b) {
            if (v[b].is_zero() || a == b) continue;
            const Scalar t = u[a] * v[b] * Scalar(static_cast<long>(b - a), u.field_);
            if (a + b > n) {
                r.loss_ = r.loss_ || !t.is_zero();
                continue;
            }
            r[a + b] += t;
        }
    }
    return r;
}

// ---------------------------------------------------------------- BCH

const std::vector<std::pair<std::vector<int>, mpq_class>>& bch_word_coefficients(int max_len) {
    static std::map<int, std::vector<std::pair<std::vector<int>, mpq_class>>> cache;
    auto it = cache.find(max_len);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<std::vector<int>, mpq_class>> out;
    std::vector<mpq_class> inv_fact(max_len + 1, 1);
    for (int i = 1; i <= max_len; ++i) inv_fact[i] = inv_fact[i - 1] / i;
    for (int m = 2; m <= max_len; ++m)
        for (unsigned bits = 0; bits < (1u << m); ++bits) {
            std::vector<int> w(m);
            for (int i = 0; i < m; ++i) w[i] = (bits >> (m - 1 - i)) & 1u;
            // Sum over factorizations into blocks u^r v^s (r + s >= 1):
            // prod 1/(r! s!) * (-1)^{n-1} / n, then divide by the word length.
            // dp[pos][n] = weighted count of factorizations of w[0..pos) into n blocks.
            std::vector<std::vector<mpq_class>> dp(m + 1, std::vector<mpq_class>(m + 1, 0));
            dp[0][0] = 1;
            for (int pos = 0; pos < m; ++pos)
                for (int n = 0; n < m; ++n) {
                    if (sgn(dp[pos][n]) == 0) continue;
                    int r = 0;
                    while (pos + r < m && w[pos + r] == 0) ++r;
                    for (int rr = 0; rr <= r; ++rr) {
                        int s = 0;
                        if (rr == r)
                            while (pos + rr + s < m && w[pos + rr + s] == 1) ++s;
                        for (int ss = (rr == 0 ? 1 : 0); ss <= (rr == r ? s : 0); ++ss)
                            dp[pos + rr + ss][n + 1] += dp[pos][n] * inv_fact[rr] * inv_fact[ss];
                    }
                }
            mpq_class coef = 0;
            for (int n = 1; n <= m; ++n) {
                if (sgn(dp[m][n]) == 0) continue;
                mpq_class t = dp[m][n] / n;
                coef += (n % 2 == 1) ? t : mpq_class(-t);
            }
            coef /= m;
            out.push_back({w, coef});
        }
    return cache[max_len] = std::move(out);
}

TruncatedWitt bch(const TruncatedWitt& u, const TruncatedWitt& v) {
    if (u.filtration() < 1 || v.filtration() < 1) throw InputError("BCH inputs must lie in filtration step >= 1");
    const Field f = u.field();
    return bch_generic<TruncatedWitt>(
        u, v, u.order(), [](const TruncatedWitt& a, const TruncatedWitt& b) { return witt_bracket(a, b); },
        [](const TruncatedWitt& a, const TruncatedWitt& b) { return a + b; },
        [f](const TruncatedWitt& a, const mpq_class& c) { return a.scaled(Scalar(c, f)); },
        [](const TruncatedWitt& a) { return a.is_zero(); });
}

// ---------------------------------------------------------------- series automorphisms

namespace {

using Series = std::vector<Scalar>;  // coefficients of x^0 .. x^{N+1}

Series mul(const Series& a, const Series& b, Field f) {
    const std::size_t n = a.size();
    Series r(n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

Series to_series(const SeriesAut& s) {
    Series r(s.order() + 2, Scalar::zero(s.field()));
    for (int k = 1; k <= s.order() + 1; ++k) r[k] = s.coeff(k);
    return r;
}

SeriesAut from_series(const Series& r, int order, Field f) {
    if (!r[0].is_zero() || !r[1].is_one()) throw std::logic_error("series is not tangent to the identity");
    SeriesAut s(order, f);
    for (int i = 1; i <= order; ++i) s[i] = r[i + 1];
    return s;
}

void require_rational(Field f) {
    if (!f.is_rational()) throw ScopeError("exponential and logarithm need characteristic 0");
}

}  // namespace

SeriesAut::SeriesAut(int order, Field f) : order_(order), field_(f), a_(order, Scalar::zero(f)) {
    if (order < 1) throw InputError("truncation order must be at least 1");
}

Scalar SeriesAut::coeff(int k) const {
    if (k == 1) return Scalar::one(field_);
    if (k >= 2 && k <= order_ + 1) return a_[k - 2];
    return Scalar::zero(field_);
}

std::string SeriesAut::str() const {
    std::ostringstream os;
    os << "x";
    for (int k = 2; k <= order_ + 1; ++k) {
        if (coeff(k).is_zero()) continue;
        os << " + " << coeff(k).str() << "*x^" << k;
    }
    return os.str();
}

SeriesAut SeriesAut::compose(const SeriesAut& other) const {
    if (other.order_ != order_) throw InputError("series of different orders");
    const Series psi = to_series(other);
    Series result(order_ + 2, Scalar::zero(field_));
    Series power = psi;  // psi^k
    for (int k = 1; k <= order_ + 1; ++k) {
        const Scalar c = coeff(k);
        if (!c.is_zero())
            for (std::size_t i = 0; i < result.size(); ++i) result[i] += c * power[i];
        power = mul(power, psi, field_);
    }
    return from_series(result, order_, field_);
}

SeriesAut SeriesAut::inverse() const {
    SeriesAut chi(order_, field_);
    for (int k = 2; k <= order_ + 1; ++k) {
        const Scalar err = compose(chi).coeff(k);
        chi[k - 1] -= err;
    }
    return chi;
}

SeriesAut exp_witt(const TruncatedWitt& u) {
    require_rational(u.field());
    const int n = u.order();
    const Field f = u.field();
    // D(g) = -(sum_i c_i x^{i+1}) g'
    Series vf(n + 2, Scalar::zero(f));
    for (int i = 1; i <= n && i + 1 <= n + 1; ++i) vf[i + 1] = -u[i];
    auto apply = [&](const Series& g) {
        Series d(n + 2, Scalar::zero(f));
        for (int k = 1; k <= n + 1; ++k) d[k - 1] = g[k] * Scalar(static_cast<long>(k), f);
        return mul(vf, d, f);
    };
    Series term(n + 2, Scalar::zero(f));
    term[1] = Scalar::one(f);
    Series sum = term;
    for (int k = 1; k <= n + 1; ++k) {
        term = apply(term);
        for (auto& x : term) x = x * Scalar(mpq_class(1, k), f);
        for (int i = 0; i < n + 2; ++i) sum[i] += term[i];
    }
    return from_series(sum, n, f);
}

TruncatedWitt log_aut(const SeriesAut& phi) {
    require_rational(phi.field());
    const int n = phi.order();
    TruncatedWitt u(n, phi.field());
    // The x^{k+1} coefficient of exp_witt(u) is -c_k plus a polynomial in c_1..c_{k-1}.
    for (int k = 1; k <= n; ++k) {
        const Scalar diff = phi.coeff(k + 1) - exp_witt(u).coeff(k + 1);
        u[k] -= diff;
    }
    return u;
}

TruncatedWitt random_witt(int order, unsigned seed, int min_step) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    TruncatedWitt u(order);
    for (int i = std::max(min_step, 1); i <= order; ++i) u[i] = Scalar(mpq_class(num(rng), den(rng)));
    return u;
}

}  // namespace gentle
