#pragma once

// Test-only helpers: an independent series matrix exponential, probability
// series generation, and sinusoid frequency estimators used to check the
// walk's oscillation frequency against the dispersion relation.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nuwalk/lattice.hpp"
#include "nuwalk/mixing.hpp"
#include "nuwalk/oracle.hpp"

namespace nuwalk::testing {

/// Scaling-and-squaring Taylor exponential. Independent of the closed-form
/// plane-rotation construction it is used to check.
inline Eigen::MatrixXcd series_expm(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    int squarings = 0;
    double norm = a.cwiseAbs().sum();
    while (norm > 0.25) {
        norm /= 2.0;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    const Eigen::MatrixXcd x = a * scale;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * x) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

/// Momentum-space probability series P(alpha -> beta; j) for j = 0..steps.
inline std::vector<double> momentum_probability_series(
    double kappa, const CoinParameters& coins, const FlavorMixer& mixer, int alpha,
    Spin spin, int beta, long steps, std::optional<double> uniform_rho = std::nullopt) {
    const int n = mixer.dimension;
    const Eigen::MatrixXcd u = oracle::momentum_step_matrix(kappa, coins, mixer, uniform_rho);
    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(2 * n);
    chi[2 * alpha + static_cast<int>(spin)] = 1.0;
    std::vector<double> out;
    out.reserve(steps + 1);
    out.push_back(std::norm(chi[2 * beta]) + std::norm(chi[2 * beta + 1]));
    for (long j = 0; j < steps; ++j) {
        chi = u * chi;
        out.push_back(std::norm(chi[2 * beta]) + std::norm(chi[2 * beta + 1]));
    }
    return out;
}

/// Lattice probability series for a plane-wave initial state.
inline std::vector<double> lattice_probability_series(int n_sites, int mode_index,
                                                      const StepOperatorSpec& spec,
                                                      int alpha, Spin spin, int beta,
                                                      long steps) {
    LatticeState state =
        plane_wave_state(n_sites, mode_index, spec.mixer.dimension, alpha, spin);
    std::vector<double> out;
    out.reserve(steps + 1);
    out.push_back(flavor_probabilities(state)[beta]);
    for (long j = 0; j < steps; ++j) {
        state = step(state, spec);
        out.push_back(flavor_probabilities(state)[beta]);
    }
    return out;
}

/// Hann-windowed periodogram power at angular frequency omega, using a
/// rotation recurrence instead of per-sample sincos.
inline double periodogram_power(const std::vector<double>& centered,
                                const std::vector<double>& window, double omega) {
    const std::complex<double> rot = std::polar(1.0, -omega);
    std::complex<double> phase = 1.0;
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < centered.size(); ++j) {
        acc += window[j] * centered[j] * phase;
        phase *= rot;
    }
    return std::norm(acc);
}

/// Location of the dominant periodogram peak in [om_lo, om_hi]: coarse scan
/// followed by golden-section refinement. Purely data-driven.
inline double fit_dominant_frequency(const std::vector<double>& series, double om_lo,
                                     double om_hi, int coarse = 256) {
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centered(n), window(n);
    for (std::size_t j = 0; j < n; ++j) {
        centered[j] = series[j] - mean;
        window[j] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * j / (n - 1));
    }

    double best_om = om_lo;
    double best_power = -1.0;
    for (int i = 0; i < coarse; ++i) {
        const double om = om_lo + (om_hi - om_lo) * (i + 0.5) / coarse;
        const double p = periodogram_power(centered, window, om);
        if (p > best_power) {
            best_power = p;
            best_om = om;
        }
    }

    const double bin = (om_hi - om_lo) / coarse;
    double a = best_om - bin, b = best_om + bin;
    constexpr double golden = 0.6180339887498949;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double pc = periodogram_power(centered, window, c);
    double pd = periodogram_power(centered, window, d);
    for (int iter = 0; iter < 140; ++iter) {
        if (pc > pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - golden * (b - a);
            pc = periodogram_power(centered, window, c);
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + golden * (b - a);
            pd = periodogram_power(centered, window, d);
        }
    }
    return 0.5 * (a + b);
}

/// Least-squares residual of the full oscillation model: a constant plus
/// sinusoids at the slow frequency and the given fast frequencies.
inline double model_residual(const std::vector<double>& series, double slow,
                             const std::array<double, 3>& fast) {
    const Eigen::Index n = static_cast<Eigen::Index>(series.size());
    Eigen::MatrixXd a(n, 9);
    Eigen::VectorXd y(n);
    const std::array<double, 4> freqs = {slow, fast[0], fast[1], fast[2]};
    for (Eigen::Index j = 0; j < n; ++j) {
        a(j, 0) = 1.0;
        for (int f = 0; f < 4; ++f) {
            a(j, 1 + 2 * f) = std::cos(freqs[f] * j);
            a(j, 2 + 2 * f) = std::sin(freqs[f] * j);
        }
        y[j] = series[j];
    }
    const Eigen::VectorXd coef = (a.transpose() * a).ldlt().solve(a.transpose() * y);
    return (y - a * coef).squaredNorm();
}

/// Refine the slow frequency by minimizing the full-model residual around an
/// initial estimate. The fast frequencies are part of the fit model; the slow
/// frequency is the free parameter under test.
inline double refine_frequency(const std::vector<double>& series, double slow0,
                               const std::array<double, 3>& fast,
                               double relative_window = 1e-5) {
    double a = slow0 * (1.0 - relative_window);
    double b = slow0 * (1.0 + relative_window);
    constexpr double golden = 0.6180339887498949;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double rc = model_residual(series, c, fast);
    double rd = model_residual(series, d, fast);
    for (int iter = 0; iter < 120; ++iter) {
        if (rc < rd) {
            b = d;
            d = c;
            rd = rc;
            c = b - golden * (b - a);
            rc = model_residual(series, c, fast);
        } else {
            a = c;
            c = d;
            rc = rd;
            d = a + golden * (b - a);
            rd = model_residual(series, d, fast);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace nuwalk::testing
