#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "cavityq/errors.hpp"
#include "cavityq/oracle/moment_table.hpp"

namespace cavityq::oracle {

// Expansion of moments of the composite mode c = a1 + b1 + a2 + b2, where
// (a1, b1) is the coherently driven pair and (a2, b2) the parametric pair.
// Each composite symbol is expanded into its constituents, the two
// subsystems factorize, and every term is looked up in the per-subsystem
// moment tables.  Nothing here assumes Gaussian statistics; the tables can
// come from closed forms or from density-matrix traces.

enum class CompositeOp {
    C,     // annihilator of the full composite mode (a1 + b1 + a2 + b2)
    CDag,
    A,     // annihilator of the superposed a mode (a1 + a2)
    ADag,
    B,     // annihilator of the superposed b mode (b1 + b2)
    BDag,
};

namespace composite_detail {

struct Constituent {
    int subsystem;  // 0: driven pair, 1: parametric pair
    int mode;       // 0: a, 1: b
    bool dag;
};

inline void expand(CompositeOp op, std::vector<Constituent>& out) {
    out.clear();
    switch (op) {
        case CompositeOp::C:
            out = {{0, 0, false}, {0, 1, false}, {1, 0, false}, {1, 1, false}};
            break;
        case CompositeOp::CDag:
            out = {{0, 0, true}, {0, 1, true}, {1, 0, true}, {1, 1, true}};
            break;
        case CompositeOp::A:
            out = {{0, 0, false}, {1, 0, false}};
            break;
        case CompositeOp::ADag:
            out = {{0, 0, true}, {1, 0, true}};
            break;
        case CompositeOp::B:
            out = {{0, 1, false}, {1, 1, false}};
            break;
        case CompositeOp::BDag:
            out = {{0, 1, true}, {1, 1, true}};
            break;
    }
}

}  // namespace composite_detail

// Evaluates <word> for a word in the composite operators, e.g.
// {CDag, CDag, C, C} for <c^dag^2 c^2>.  The word must be normally ordered
// mode by mode in every expansion branch, i.e. no creation operator of a
// constituent mode may appear to the right of its annihilator; in practice
// this means passing words with all daggered symbols first.
inline std::complex<double> composite_moment(std::span<const CompositeOp> word,
                                             const MomentTable& driven,
                                             const MomentTable& parametric) {
    const int n = static_cast<int>(word.size());
    std::vector<std::vector<composite_detail::Constituent>> choices(n);
    for (int i = 0; i < n; ++i)
        composite_detail::expand(word[i], choices[i]);

    std::vector<int> pick(n, 0);
    std::complex<double> total = 0.0;
    while (true) {
        // accumulate exponents (p, q, r, s) per subsystem for this branch
        int expo[2][4] = {};
        bool annihilated[2][2] = {};  // an undaggered op of (subsystem, mode) was seen
        for (int i = 0; i < n; ++i) {
            const auto& c = choices[i][pick[i]];
            if (c.dag && annihilated[c.subsystem][c.mode])
                throw MalformedInput("composite word is not normally ordered per mode");
            if (!c.dag)
                annihilated[c.subsystem][c.mode] = true;
            const int slot = c.mode * 2 + (c.dag ? 0 : 1);  // p, q, r, s
            ++expo[c.subsystem][slot];
        }
        total += driven.get(expo[0][0], expo[0][1], expo[0][2], expo[0][3])
                 * parametric.get(expo[1][0], expo[1][1], expo[1][2], expo[1][3]);

        int i = n - 1;
        while (i >= 0 && pick[i] + 1 == static_cast<int>(choices[i].size()))
            pick[i--] = 0;
        if (i < 0)
            break;
        ++pick[i];
    }
    return total;
}

inline std::complex<double> composite_moment(std::initializer_list<CompositeOp> word,
                                             const MomentTable& driven,
                                             const MomentTable& parametric) {
    return composite_moment(std::span<const CompositeOp>(word.begin(), word.size()), driven,
                            parametric);
}

// Observables of the superposed field assembled from composite moments.
// The commutator [c, c^dag] = 4 (one unit per constituent) fixes the
// constants relating normally ordered moments to variances.
struct CompositeObservables {
    double mean_photon;
    double photon_variance;
    double g2_a;
    double g2_b;
    double g2_ab;
    double plus_var;
    double minus_var;
};

inline CompositeObservables composite_observables(const MomentTable& driven,
                                                  const MomentTable& parametric) {
    using Op = CompositeOp;
    const auto mom = [&](std::initializer_list<Op> w) {
        return composite_moment(w, driven, parametric);
    };

    const double nbar = std::real(mom({Op::CDag, Op::C}));
    const double c4 = std::real(mom({Op::CDag, Op::CDag, Op::C, Op::C}));
    const std::complex<double> mean_c = mom({Op::C});
    const std::complex<double> mean_cdag = mom({Op::CDag});
    const std::complex<double> cc = mom({Op::C, Op::C});
    const std::complex<double> cdcd = mom({Op::CDag, Op::CDag});

    const double na = std::real(mom({Op::ADag, Op::A}));
    const double nb = std::real(mom({Op::BDag, Op::B}));
    const double a4 = std::real(mom({Op::ADag, Op::ADag, Op::A, Op::A}));
    const double b4 = std::real(mom({Op::BDag, Op::BDag, Op::B, Op::B}));
    const double abn = std::real(mom({Op::ADag, Op::BDag, Op::A, Op::B}));

    CompositeObservables o;
    o.mean_photon = nbar;
    o.photon_variance = c4 + 4.0 * nbar - nbar * nbar;
    if (na <= 0.0 || nb <= 0.0)
        throw UndefinedCorrelation("vanishing mode intensity");
    o.g2_a = a4 / (na * na);
    o.g2_b = b4 / (nb * nb);
    o.g2_ab = abn / (na * nb);

    const double coherent_sq =
        std::real(mean_cdag * mean_cdag + mean_c * mean_c + 2.0 * mean_cdag * mean_c);
    o.plus_var = 4.0 + 2.0 * nbar + std::real(cdcd + cc) - coherent_sq;
    const double coherent_diff =
        std::real(2.0 * mean_cdag * mean_c - mean_cdag * mean_cdag - mean_c * mean_c);
    o.minus_var = 4.0 + 2.0 * nbar - std::real(cdcd + cc) - coherent_diff;
    return o;
}

// Both sides of the Gaussian fourth-moment factorization for the
// fluctuation part of the composite mode: lhs = <dc^dag^2 dc^2>,
// rhs = <dc^dag^2><dc^2> + 2<dc^dag dc>^2.  The inputs are centered
// internally using the first moments found in the tables.
struct FactorizationCheck {
    double lhs;
    double rhs;
};

inline FactorizationCheck gaussian_factorization_check(const MomentTable& driven,
                                                       const MomentTable& parametric) {
    const MomentTable driven_c =
        centered_table(driven, driven.get(0, 1, 0, 0), driven.get(0, 0, 0, 1));
    const MomentTable parametric_c =
        centered_table(parametric, parametric.get(0, 1, 0, 0), parametric.get(0, 0, 0, 1));
    using Op = CompositeOp;
    const auto mom = [&](std::initializer_list<Op> w) {
        return composite_moment(w, driven_c, parametric_c);
    };
    const std::complex<double> up2 = mom({Op::CDag, Op::CDag});
    const std::complex<double> dn2 = mom({Op::C, Op::C});
    const std::complex<double> nn = mom({Op::CDag, Op::C});
    FactorizationCheck f;
    f.lhs = std::real(mom({Op::CDag, Op::CDag, Op::C, Op::C}));
    f.rhs = std::real(up2 * dn2 + 2.0 * nn * nn);
    return f;
}

}  // namespace cavityq::oracle
