#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cavityq/oracle/moment_ode.hpp"
#include "cavityq/oracle/moment_table.hpp"
#include "cavityq/params.hpp"

namespace cavityq::oracle {

// Brute-force master-equation solver on a truncated two-mode Fock basis.
// The density matrix is evolved element by element with RK4; no moment
// equations and no Gaussian structure enter anywhere, which makes this the
// strongest independent check available to the test suite.

enum class CavitySystem { Coherent, Subharmonic };

// Two-mode density matrix rho(i, j; k, l) = <i, j| rho |k, l> stored
// row-major in the composite index (i*dim + j, k*dim + l).  `truncation` is
// the highest retained Fock level N; the per-mode dimension is N + 1.
class TwoModeDensityMatrix {
public:
    explicit TwoModeDensityMatrix(int truncation) : dim_(truncation + 1) {
        if (truncation < 1)
            throw MalformedInput("Fock truncation must be at least 1");
        data_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_ * dim_, {});
        (*this)(0, 0, 0, 0) = 1.0;  // two-mode vacuum
    }

    int truncation() const { return dim_ - 1; }
    int dim() const { return dim_; }

    std::complex<double>& operator()(int i, int j, int k, int l) {
        return data_[flat(i, j, k, l)];
    }
    const std::complex<double>& operator()(int i, int j, int k, int l) const {
        return data_[flat(i, j, k, l)];
    }

    std::vector<std::complex<double>>& data() { return data_; }
    const std::vector<std::complex<double>>& data() const { return data_; }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                t += std::real((*this)(i, j, i, j));
        return t;
    }

    double hermiticity_defect() const {
        double d = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k)
                    for (int l = 0; l < dim_; ++l)
                        d = std::max(d, std::abs((*this)(i, j, k, l)
                                                 - std::conj((*this)(k, l, i, j))));
        return d;
    }

    double purity() const {
        // Tr rho^2 = sum |rho_xy|^2 for Hermitian rho
        double s = 0.0;
        for (const auto& v : data_)
            s += std::norm(v);
        return s;
    }

    double min_eigenvalue() const {
        const int n = dim_ * dim_;
        Eigen::MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                m(r, c) = data_[static_cast<std::size_t>(r) * n + c];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    // Total population of the top `levels` Fock levels of the worse mode; the
    // truncation is adequate only while this stays small.
    double top_band_population(int levels = 2) const {
        double pa = 0.0, pb = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const double pop = std::real((*this)(i, j, i, j));
                if (i >= dim_ - levels)
                    pa += pop;
                if (j >= dim_ - levels)
                    pb += pop;
            }
        return std::max(pa, pb);
    }

    // Zero-padded copy on a larger basis; matrix elements are unchanged.
    TwoModeDensityMatrix embedded(int truncation) const {
        if (truncation < this->truncation())
            throw MalformedInput("embedding cannot shrink the basis");
        TwoModeDensityMatrix out(truncation);
        out(0, 0, 0, 0) = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k)
                    for (int l = 0; l < dim_; ++l)
                        out(i, j, k, l) = (*this)(i, j, k, l);
        return out;
    }

private:
    std::size_t flat(int i, int j, int k, int l) const {
        return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
    }

    int dim_;
    std::vector<std::complex<double>> data_;
};

struct FockRunInfo {
    double final_time = 0.0;
    long steps = 0;
    double trace_defect = 0.0;
    double hermiticity_defect = 0.0;
    double top_band_population = 0.0;
};

namespace fock_detail {

using CVec = std::vector<std::complex<double>>;

struct Workspace {
    int dim;
    std::vector<double> sq;  // sq[n] = sqrt(n)
    CVec k1, k2, k3, k4, tmp;

    explicit Workspace(int dim_) : dim(dim_) {
        sq.resize(dim + 2);
        for (int n = 0; n < dim + 2; ++n)
            sq[n] = std::sqrt(static_cast<double>(n));
        const std::size_t size = static_cast<std::size_t>(dim) * dim * dim * dim;
        k1.resize(size);
        k2.resize(size);
        k3.resize(size);
        k4.resize(size);
        tmp.resize(size);
    }
};

// Right-hand side of the Lindblad equation, written directly on matrix
// elements.  Ladder operators act as index shifts:
//   (a rho)(i,...)   = sq[i+1] rho(i+1,...)      (rho a)(..k..) = sq[k] rho(..k-1..)
//   (a^dag rho)(i,.) = sq[i]   rho(i-1,...)      (rho a^dag)   = sq[k+1] rho(..k+1..)
// Terms whose shifted index leaves the basis drop out, which is exactly the
// truncation of the operators themselves.
struct Rhs {
    const SystemParams p;
    const CavitySystem system;
    const int dim;
    const std::vector<double>& sq;

    void operator()(const CVec& rho, CVec& out) const {
        const int m = dim;
        const std::size_t sl = 1;
        const std::size_t sk = static_cast<std::size_t>(m);
        const std::size_t sj = sk * m;
        const std::size_t si = sj * m;
        const double k = p.kappa, e = p.epsilon, g = p.gamma;

        std::size_t idx = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int kk = 0; kk < m; ++kk)
                    for (int ll = 0; ll < m; ++ll, ++idx) {
                        std::complex<double> acc = 0.0;

                        // mirror losses: kappa (a rho a^dag - (a^dag a rho + rho a^dag a)/2), same for b
                        if (i + 1 < m && kk + 1 < m)
                            acc += k * sq[i + 1] * sq[kk + 1] * rho[idx + si + sk];
                        if (j + 1 < m && ll + 1 < m)
                            acc += k * sq[j + 1] * sq[ll + 1] * rho[idx + sj + sl];
                        acc -= 0.5 * k * static_cast<double>(i + j + kk + ll) * rho[idx];

                        if (system == CavitySystem::Coherent) {
                            // drive: epsilon (a^dag - a + b^dag - b) acting from both sides
                            if (i > 0) acc += e * sq[i] * rho[idx - si];
                            if (i + 1 < m) acc -= e * sq[i + 1] * rho[idx + si];
                            if (j > 0) acc += e * sq[j] * rho[idx - sj];
                            if (j + 1 < m) acc -= e * sq[j + 1] * rho[idx + sj];
                            if (kk > 0) acc += e * sq[kk] * rho[idx - sk];
                            if (kk + 1 < m) acc -= e * sq[kk + 1] * rho[idx + sk];
                            if (ll > 0) acc += e * sq[ll] * rho[idx - sl];
                            if (ll + 1 < m) acc -= e * sq[ll + 1] * rho[idx + sl];
                        } else {
                            // pair creation: gamma (ab rho - a^dag b^dag rho - rho ab + rho a^dag b^dag)
                            if (i + 1 < m && j + 1 < m)
                                acc += g * sq[i + 1] * sq[j + 1] * rho[idx + si + sj];
                            if (i > 0 && j > 0)
                                acc -= g * sq[i] * sq[j] * rho[idx - si - sj];
                            if (kk > 0 && ll > 0)
                                acc -= g * sq[kk] * sq[ll] * rho[idx - sk - sl];
                            if (kk + 1 < m && ll + 1 < m)
                                acc += g * sq[kk + 1] * sq[ll + 1] * rho[idx + sk + sl];
                        }

                        out[idx] = acc;
                    }
    }
};

inline void rk4_step(const Rhs& rhs, CVec& rho, double dt, Workspace& w) {
    const std::size_t n = rho.size();
    rhs(rho, w.k1);
    for (std::size_t x = 0; x < n; ++x) w.tmp[x] = rho[x] + 0.5 * dt * w.k1[x];
    rhs(w.tmp, w.k2);
    for (std::size_t x = 0; x < n; ++x) w.tmp[x] = rho[x] + 0.5 * dt * w.k2[x];
    rhs(w.tmp, w.k3);
    for (std::size_t x = 0; x < n; ++x) w.tmp[x] = rho[x] + dt * w.k3[x];
    rhs(w.tmp, w.k4);
    for (std::size_t x = 0; x < n; ++x)
        rho[x] += dt / 6.0 * (w.k1[x] + 2.0 * w.k2[x] + 2.0 * w.k3[x] + w.k4[x]);
}

// Tracked moments used for the steady-state drift test.
struct Tracked {
    std::complex<double> mean_a, mean_b, n_a, n_b, ab, a_dag_b;

    double distance(const Tracked& o) const {
        double d = 0.0;
        d = std::max(d, std::abs(mean_a - o.mean_a));
        d = std::max(d, std::abs(mean_b - o.mean_b));
        d = std::max(d, std::abs(n_a - o.n_a));
        d = std::max(d, std::abs(n_b - o.n_b));
        d = std::max(d, std::abs(ab - o.ab));
        d = std::max(d, std::abs(a_dag_b - o.a_dag_b));
        return d;
    }
};

inline Tracked track(const TwoModeDensityMatrix& rho) {
    Tracked t{};
    const int m = rho.dim();
    std::vector<double> sq(m + 1);
    for (int n = 0; n <= m; ++n)
        sq[n] = std::sqrt(static_cast<double>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            t.n_a += static_cast<double>(i) * rho(i, j, i, j);
            t.n_b += static_cast<double>(j) * rho(i, j, i, j);
            if (i > 0)
                t.mean_a += sq[i] * rho(i, j, i - 1, j);
            if (j > 0)
                t.mean_b += sq[j] * rho(i, j, i, j - 1);
            if (i > 0 && j > 0)
                t.ab += sq[i] * sq[j] * rho(i, j, i - 1, j - 1);
            if (i > 0 && j + 1 < m)
                t.a_dag_b += sq[i] * sq[j + 1] * rho(i - 1, j + 1, i, j);
        }
    return t;
}

}  // namespace fock_detail

// Integrates the master equation from vacuum (or from `initial`, if given)
// until the tracked moments stop drifting, and returns the steady density
// matrix.  Throws TruncationTooSmall as soon as significant population
// reaches the top two Fock levels of either mode, and NoConvergence if the
// drift never settles before t_end (the subharmonic system at or above
// threshold is rejected up front, since its photon number has no steady
// value).
inline TwoModeDensityMatrix fock_steady_state(const SystemParams& p, CavitySystem system,
                                              const IntegrationConfig& c = {},
                                              FockRunInfo* info = nullptr,
                                              const TwoModeDensityMatrix* initial = nullptr) {
    validate(p);
    if (system == CavitySystem::Subharmonic)
        require_subthreshold(p);
    if (c.truncation < 1)
        throw MalformedInput("Fock truncation must be at least 1");

    const double dt = detail::resolve_dt(p, c);
    const double t_end = detail::resolve_t_end(p, c);
    const double tol = c.convergence_tol > 0.0 ? c.convergence_tol : 1e-10;

    TwoModeDensityMatrix rho = initial ? *initial : TwoModeDensityMatrix(c.truncation);
    if (initial && initial->truncation() != c.truncation)
        rho = initial->embedded(c.truncation);

    fock_detail::Workspace w(rho.dim());
    const fock_detail::Rhs rhs{p, system, rho.dim(), w.sq};

    const int check_every =
        std::max(1, static_cast<int>(std::lround(0.5 / (p.kappa * dt))));
    fock_detail::Tracked last = fock_detail::track(rho);
    double t = 0.0;
    long steps = 0;
    bool settled = false;

    while (t < t_end) {
        fock_detail::rk4_step(rhs, rho.data(), dt, w);
        t += dt;
        ++steps;
        if (steps % check_every == 0) {
            if (rho.top_band_population() > 1e-8)
                throw TruncationTooSmall(
                    "population reached the top Fock levels; increase the truncation");
            const fock_detail::Tracked now = fock_detail::track(rho);
            if (now.distance(last) < tol) {
                settled = true;
                break;
            }
            last = now;
        }
    }
    if (!settled)
        throw NoConvergence("density-matrix moments did not settle before t_end");

    if (info) {
        info->final_time = t;
        info->steps = steps;
        info->trace_defect = std::abs(rho.trace() - 1.0);
        info->hermiticity_defect = rho.hermiticity_defect();
        info->top_band_population = rho.top_band_population();
    }
    return rho;
}

// Normally ordered moments <a^dag^p a^q b^dag^r b^s> for all p+q+r+s <=
// order, read off the density matrix as weighted traces along shifted
// diagonals.
inline MomentTable density_moments(const TwoModeDensityMatrix& rho, int order) {
    if (order > 4)
        throw OrderTooHigh("density moments supported up to total order 4");
    if (order < 0)
        throw MalformedInput("moment order must be non-negative");
    const int m = rho.dim();
    MomentTable t(order);
    for (int p = 0; p <= order; ++p)
        for (int q = 0; p + q <= order; ++q)
            for (int r = 0; p + q + r <= order; ++r)
                for (int s = 0; p + q + r + s <= order; ++s) {
                    // Tr(rho a^dag^p a^q b^dag^r b^s): row index (i, j) pairs
                    // with column (i - q + p, j - s + r)
                    std::complex<double> sum = 0.0;
                    for (int i = q; i < m; ++i) {
                        const int k = i - q + p;
                        if (k >= m)
                            continue;
                        double fa = 1.0;
                        for (int d = 0; d < q; ++d)
                            fa *= std::sqrt(static_cast<double>(i - d));
                        for (int d = 1; d <= p; ++d)
                            fa *= std::sqrt(static_cast<double>(i - q + d));
                        for (int j = s; j < m; ++j) {
                            const int l = j - s + r;
                            if (l >= m)
                                continue;
                            double fb = 1.0;
                            for (int d = 0; d < s; ++d)
                                fb *= std::sqrt(static_cast<double>(j - d));
                            for (int d = 1; d <= r; ++d)
                                fb *= std::sqrt(static_cast<double>(j - s + d));
                            sum += fa * fb * rho(i, j, k, l);
                        }
                    }
                    t.set(p, q, r, s, sum);
                }
    return t;
}

namespace fock_detail {

// Poisson tail mass beyond the highest retained level: the weight of a
// coherent state of intensity `mean` that falls outside a basis of size dim.
inline double coherent_tail_mass(double mean, int dim) {
    if (mean == 0.0)
        return 0.0;
    double term = std::exp(-mean);
    double cum = term;
    for (int n = 1; n < dim; ++n) {
        term *= mean / n;
        cum += term;
    }
    return std::max(0.0, 1.0 - cum);
}

// Coefficients <n|alpha> of a coherent state on the truncated basis.
inline CVec coherent_coefficients(std::complex<double> alpha, int dim) {
    CVec c(dim);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n)
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

}  // namespace fock_detail

// Weight of the probe expansion that the basis must retain before a Husimi
// evaluation is trusted.
inline constexpr double probe_tail_limit = 1e-8;

// Smallest truncation whose basis keeps the Poisson tail of a probe of
// intensity max_abs2 a factor of ten below the acceptance gate.
inline int required_probe_truncation(double max_abs2, int at_least = 1) {
    int n = std::max(1, at_least);
    while (fock_detail::coherent_tail_mass(max_abs2, n + 1) >= 0.1 * probe_tail_limit)
        ++n;
    return n;
}

// Husimi function <alpha, beta| rho |alpha, beta> / pi^2 evaluated directly
// in the Fock basis.  Guards: the state itself must fit the basis (top-band
// population below 1e-8) and the coherent-state expansion of the probe must
// lose less than 1e-8 of its weight beyond the basis.  For probe amplitudes
// beyond that, evaluate on rho.embedded(required_probe_truncation(...)):
// zero padding changes no matrix element, only the expansion length.
inline double numeric_qfunction(const TwoModeDensityMatrix& rho, std::complex<double> alpha,
                                std::complex<double> beta) {
    const int m = rho.dim();
    if (rho.top_band_population() > 1e-8)
        throw TruncationTooSmall("state population reaches the top Fock levels");
    const double tail = std::max(fock_detail::coherent_tail_mass(std::norm(alpha), m),
                                 fock_detail::coherent_tail_mass(std::norm(beta), m));
    if (tail > probe_tail_limit)
        throw TruncationTooSmall("probe amplitude too large for the Fock basis");

    const fock_detail::CVec ca = fock_detail::coherent_coefficients(alpha, m);
    const fock_detail::CVec cb = fock_detail::coherent_coefficients(beta, m);
    std::complex<double> val = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const std::complex<double> left = std::conj(ca[i] * cb[j]);
            std::complex<double> row = 0.0;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    row += rho(i, j, k, l) * ca[k] * cb[l];
            val += left * row;
        }
    constexpr double pi = std::numbers::pi;
    return std::real(val) / (pi * pi);
}

// Single-mode reduction for marginal checks.
class SingleModeDensityMatrix {
public:
    explicit SingleModeDensityMatrix(int dim) : dim_(dim), data_(dim * dim) {}

    int dim() const { return dim_; }
    std::complex<double>& operator()(int i, int k) { return data_[i * dim_ + k]; }
    const std::complex<double>& operator()(int i, int k) const { return data_[i * dim_ + k]; }

    // Zero-padded copy in a larger basis; the represented operator is unchanged.
    SingleModeDensityMatrix embedded(int dim) const {
        if (dim < dim_)
            throw MalformedInput("embedding cannot shrink the Fock basis");
        SingleModeDensityMatrix out(dim);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k)
                out(i, k) = (*this)(i, k);
        return out;
    }

private:
    int dim_;
    std::vector<std::complex<double>> data_;
};

inline SingleModeDensityMatrix partial_trace_mode_b(const TwoModeDensityMatrix& rho) {
    const int m = rho.dim();
    SingleModeDensityMatrix out(m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            std::complex<double> sum = 0.0;
            for (int j = 0; j < m; ++j)
                sum += rho(i, j, k, j);
            out(i, k) = sum;
        }
    return out;
}

inline double numeric_qfunction_single(const SingleModeDensityMatrix& rho,
                                       std::complex<double> alpha) {
    const int m = rho.dim();
    if (fock_detail::coherent_tail_mass(std::norm(alpha), m) > probe_tail_limit)
        throw TruncationTooSmall("probe amplitude too large for the Fock basis");
    const fock_detail::CVec c = fock_detail::coherent_coefficients(alpha, m);
    std::complex<double> val = 0.0;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            val += std::conj(c[i]) * rho(i, k) * c[k];
    return std::real(val) / std::numbers::pi;
}

}  // namespace cavityq::oracle
