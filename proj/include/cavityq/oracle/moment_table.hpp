#pragma once

#include <complex>
#include <vector>

#include "cavityq/errors.hpp"

namespace cavityq::oracle {

// Dense table of normally ordered two-mode moments <a^dag^p a^q b^dag^r b^s>
// for all exponents with p + q + r + s <= max_order.  Entries must be set
// before they are read; asking for an absent or out-of-range entry throws
// MissingMoment so that silent zeros cannot corrupt a composite expansion.
class MomentTable {
public:
    explicit MomentTable(int max_order) : max_order_(max_order) {
        if (max_order < 0 || max_order > 8)
            throw MalformedInput("moment table order out of range");
        const int n = max_order + 1;
        values_.assign(static_cast<std::size_t>(n) * n * n * n, {});
        present_.assign(values_.size(), false);
    }

    int max_order() const { return max_order_; }

    void set(int p, int q, int r, int s, std::complex<double> value) {
        values_[index(p, q, r, s)] = value;
        present_[index(p, q, r, s)] = true;
    }

    std::complex<double> get(int p, int q, int r, int s) const {
        if (p < 0 || q < 0 || r < 0 || s < 0 || p + q + r + s > max_order_)
            throw MissingMoment("moment order exceeds table");
        const std::size_t i = index(p, q, r, s);
        if (!present_[i])
            throw MissingMoment("moment was never computed");
        return values_[i];
    }

private:
    std::size_t index(int p, int q, int r, int s) const {
        const std::size_t n = static_cast<std::size_t>(max_order_) + 1;
        return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
    }

    int max_order_;
    std::vector<std::complex<double>> values_;
    std::vector<bool> present_;
};

// Moments of the product coherent state |amp>|amp> with a real amplitude:
// every normally ordered moment is amp^(p+q+r+s).
inline MomentTable coherent_moment_table(double amplitude, int order = 4) {
    MomentTable t(order);
    for (int p = 0; p <= order; ++p)
        for (int q = 0; p + q <= order; ++q)
            for (int r = 0; p + q + r <= order; ++r)
                for (int s = 0; p + q + r + s <= order; ++s)
                    t.set(p, q, r, s, std::pow(amplitude, p + q + r + s));
    return t;
}

namespace detail {

enum class ElemOp { ADag, A, BDag, B };

// Second moments of the zero-mean Gaussian pair: occupation for a^dag a and
// b^dag b, the anomalous correlation for ab and a^dag b^dag, zero otherwise.
inline std::complex<double> pair_value(ElemOp x, ElemOp y, double number,
                                       std::complex<double> anomalous) {
    const auto match = [&](ElemOp u, ElemOp v) {
        return (x == u && y == v) || (x == v && y == u);
    };
    if (match(ElemOp::ADag, ElemOp::A) || match(ElemOp::BDag, ElemOp::B))
        return number;
    if (match(ElemOp::A, ElemOp::B))
        return anomalous;
    if (match(ElemOp::ADag, ElemOp::BDag))
        return anomalous;
    return 0.0;
}

// Sum over perfect pairings (Isserlis) of a normally ordered word.
inline std::complex<double> wick_sum(const std::vector<ElemOp>& word, double number,
                                     std::complex<double> anomalous) {
    if (word.empty())
        return 1.0;
    if (word.size() % 2 != 0)
        return 0.0;
    const ElemOp first = word.front();
    std::complex<double> total = 0.0;
    for (std::size_t j = 1; j < word.size(); ++j) {
        const std::complex<double> pv = pair_value(first, word[j], number, anomalous);
        if (pv == 0.0)
            continue;
        std::vector<ElemOp> rest;
        rest.reserve(word.size() - 2);
        for (std::size_t k = 1; k < word.size(); ++k)
            if (k != j)
                rest.push_back(word[k]);
        total += pv * wick_sum(rest, number, anomalous);
    }
    return total;
}

}  // namespace detail

// Moments of the zero-mean two-mode Gaussian with occupation `number` per
// mode and anomalous correlation `anomalous` between the modes, via Wick
// pairing.  This is the parametric steady state when fed the corresponding
// closed-form second moments, but the routine itself is state-agnostic.
inline MomentTable gaussian_pair_moment_table(double number, std::complex<double> anomalous,
                                              int order = 4) {
    MomentTable t(order);
    for (int p = 0; p <= order; ++p)
        for (int q = 0; p + q <= order; ++q)
            for (int r = 0; p + q + r <= order; ++r)
                for (int s = 0; p + q + r + s <= order; ++s) {
                    std::vector<detail::ElemOp> word;
                    word.insert(word.end(), p, detail::ElemOp::ADag);
                    word.insert(word.end(), r, detail::ElemOp::BDag);
                    word.insert(word.end(), q, detail::ElemOp::A);
                    word.insert(word.end(), s, detail::ElemOp::B);
                    t.set(p, q, r, s, detail::wick_sum(word, number, anomalous));
                }
    return t;
}

namespace detail {

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Integer power by repeated multiplication; std::pow on complex arguments
// routes through exp/log and turns 0^0 into nan.
inline std::complex<double> ipow(std::complex<double> base, int e) {
    std::complex<double> r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

}  // namespace detail

// Rewrites a moment table around shifted operators a - mean_a, b - mean_b.
// The shifts are c-numbers, so each centered moment is a binomial
// combination of raw moments of equal or lower order.
inline MomentTable centered_table(const MomentTable& raw, std::complex<double> mean_a,
                                  std::complex<double> mean_b) {
    const int order = raw.max_order();
    MomentTable t(order);
    const std::complex<double> ca = std::conj(mean_a);
    const std::complex<double> cb = std::conj(mean_b);
    for (int p = 0; p <= order; ++p)
        for (int q = 0; p + q <= order; ++q)
            for (int r = 0; p + q + r <= order; ++r)
                for (int s = 0; p + q + r + s <= order; ++s) {
                    std::complex<double> sum = 0.0;
                    for (int i = 0; i <= p; ++i)
                        for (int j = 0; j <= q; ++j)
                            for (int k = 0; k <= r; ++k)
                                for (int l = 0; l <= s; ++l) {
                                    std::complex<double> coef =
                                        detail::binom(p, i) * detail::binom(q, j)
                                        * detail::binom(r, k) * detail::binom(s, l);
                                    coef *= detail::ipow(-ca, p - i) * detail::ipow(-mean_a, q - j)
                                            * detail::ipow(-cb, r - k) * detail::ipow(-mean_b, s - l);
                                    sum += coef * raw.get(i, j, k, l);
                                }
                    t.set(p, q, r, s, sum);
                }
    return t;
}

}  // namespace cavityq::oracle
