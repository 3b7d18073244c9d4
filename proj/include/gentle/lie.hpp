#pragma once

#include "gentle/scalar.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gentle {

// Element sum_{i=1}^{N} c_i w_i of the positive Witt algebra truncated at order N,
// with [w_m, w_n] = (n - m) w_{m+n}.
class TruncatedWitt {
public:
    TruncatedWitt() = default;
    TruncatedWitt(int order, Field f = {});
    static TruncatedWitt basis(int order, int i, Field f = {});

    int order() const { return order_; }
    Field field() const { return field_; }
    const Scalar& operator[](int i) const { return c_.at(i - 1); }
    Scalar& operator[](int i) { return c_.at(i - 1); }
    bool is_zero() const;
    // Smallest i with c_i != 0 (order + 1 for zero).
    int filtration() const;
    // True when the last bracket dropped nonzero terms above the order.
    bool truncation_loss() const { return loss_; }

    TruncatedWitt operator+(const TruncatedWitt& o) const;
    TruncatedWitt operator-(const TruncatedWitt& o) const;
    TruncatedWitt operator-() const;
    TruncatedWitt scaled(const Scalar& s) const;
    bool operator==(const TruncatedWitt& o) const { return c_ == o.c_; }

    std::string str() const;

    friend TruncatedWitt witt_bracket(const TruncatedWitt& u, const TruncatedWitt& v);

private:
    int order_ = 0;
    Field field_{};
    std::vector<Scalar> c_;
    bool loss_ = false;
};

TruncatedWitt witt_bracket(const TruncatedWitt& u, const TruncatedWitt& v);

// Coefficients of the Baker-Campbell-Hausdorff series in Dynkin form: every word in the
// letters 0 (= u) and 1 (= v) of length 2..max_len, sorted by length, with the rational
// coefficient of its right-nested bracket [x1, [x2, [..., xm]]]. The length-1 words give u + v.
const std::vector<std::pair<std::vector<int>, mpq_class>>& bch_word_coefficients(int max_len);

// BCH product in any Lie algebra filtered so that a word of m letters lies in step >= m and
// steps above `order` vanish. Denominators are converted into the scalar field term by term.
template <class L>
L bch_generic(const L& u, const L& v, int order, const std::function<L(const L&, const L&)>& bracket,
              const std::function<L(const L&, const L&)>& add,
              const std::function<L(const L&, const mpq_class&)>& scale,
              const std::function<bool(const L&)>& is_zero) {
    L sum = add(u, v);
    // Nonzero right-nested brackets, keyed by word.
    std::map<std::vector<int>, L> memo;
    for (const auto& [word, coef] : bch_word_coefficients(order)) {
        const L& head = word[0] == 0 ? u : v;
        L acc;
        if (word.size() == 2) {
            acc = bracket(head, word[1] == 0 ? u : v);
        } else {
            auto it = memo.find(std::vector<int>(word.begin() + 1, word.end()));
            if (it == memo.end()) continue;
            acc = bracket(head, it->second);
        }
        if (is_zero(acc)) continue;
        if (sgn(coef) != 0) sum = add(sum, scale(acc, coef));
        memo.emplace(word, std::move(acc));
    }
    return sum;
}

TruncatedWitt bch(const TruncatedWitt& u, const TruncatedWitt& v);

// phi(x) = x (1 + a_1 x + ... + a_N x^N), a truncated automorphism of k[[x]].
class SeriesAut {
public:
    SeriesAut() = default;
    SeriesAut(int order, Field f = {});
    static SeriesAut identity(int order, Field f = {}) { return SeriesAut(order, f); }

    int order() const { return order_; }
    Field field() const { return field_; }
    const Scalar& operator[](int i) const { return a_.at(i - 1); }
    Scalar& operator[](int i) { return a_.at(i - 1); }
    // Coefficient of x^k in phi(x), 1 <= k <= N + 1.
    Scalar coeff(int k) const;
    bool operator==(const SeriesAut& o) const { return a_ == o.a_; }
    std::string str() const;

    // (this o other)(x) = this(other(x)).
    SeriesAut compose(const SeriesAut& other) const;
    SeriesAut inverse() const;

private:
    int order_ = 0;
    Field field_{};
    std::vector<Scalar> a_;
};

// exp of the derivation sum_i c_i (-x^{i+1} d/dx) applied to x. Rationals only.
SeriesAut exp_witt(const TruncatedWitt& u);
// Inverse of exp_witt, solved order by order. Rationals only.
TruncatedWitt log_aut(const SeriesAut& phi);

// Random element with small rational coefficients, deterministic in the seed.
TruncatedWitt random_witt(int order, unsigned seed, int min_step = 1);

}  // namespace gentle
