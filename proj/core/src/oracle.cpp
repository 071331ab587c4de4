#include "nuwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nuwalk::oracle {

Eigen::MatrixXcd momentum_step_matrix(double kappa, const CoinParameters& coins,
                                      const FlavorMixer& mixer,
                                      std::optional<double> uniform_rho) {
    const int n = mixer.dimension;
    coins.validate(n);

    Eigen::MatrixXcd blocks = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    Eigen::Matrix2cd d;
    d << std::polar(1.0, kappa), 0.0, 0.0, std::polar(1.0, -kappa);
    for (int h = 0; h < n; ++h)
        blocks.block<2, 2>(2 * h, 2 * h) = d * build_coin(coins.epsilon, coins.thetas[h]);

    Eigen::MatrixXcd ri = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ri(2 * a, 2 * b) = mixer.matrix(a, b);
            ri(2 * a + 1, 2 * b + 1) = mixer.matrix(a, b);
        }

    Eigen::MatrixXcd u = ri * blocks * ri.adjoint();
    if (uniform_rho) {
        const std::complex<double> phase = std::polar(1.0, coins.epsilon * *uniform_rho);
        u.row(0) *= phase;
        u.row(1) *= phase;
    }
    return u;
}

double lattice_dispersion(double eps_theta, double kappa) {
    return std::acos(std::clamp(std::cos(eps_theta) * std::cos(kappa), -1.0, 1.0));
}

double vacuum_transition_probability(const FlavorMixer& mixer,
                                     const std::vector<double>& energies, double t,
                                     int alpha, int beta) {
    const int n = mixer.dimension;
    if (static_cast<int>(energies.size()) != n)
        throw std::invalid_argument("vacuum_transition_probability: need one energy per flavor");
    if (alpha < 0 || alpha >= n || beta < 0 || beta >= n)
        throw std::invalid_argument("vacuum_transition_probability: flavor index out of range");
    std::complex<double> amp = 0.0;
    for (int i = 0; i < n; ++i)
        amp += mixer.matrix(beta, i) * std::polar(1.0, -energies[i] * t) *
               std::conj(mixer.matrix(alpha, i));
    return std::norm(amp);
}

ContinuumEnergies continuum_energies(const EffectiveHamiltonian& h) {
    if (!(h.k > 0.0)) throw std::invalid_argument("continuum_energies: k must be positive");
    ContinuumEnergies out;
    double max_mass = 0.0;
    out.energies.reserve(h.masses.size());
    for (double m : h.masses) {
        out.energies.push_back(h.k + m * m / (2.0 * h.k));
        max_mass = std::max(max_mass, std::abs(m));
    }
    out.relativistic = h.k >= 5.0 * max_mass;
    return out;
}

double physical_phase(const ExperimentSpec& spec) {
    if (!(spec.energy_gev > 0.0)) throw std::invalid_argument("physical_phase: E must be positive");
    if (spec.baseline_km < 0.0) throw std::invalid_argument("physical_phase: L must be >= 0");
    return 5.08 * spec.dm2_ev2 * spec.baseline_km / (2.0 * spec.energy_gev);
}

double resonance_density(double phi, double dm2, double k) {
    return dm2 * std::cos(2.0 * phi) / (2.0 * k);
}

MswPoint matter_mixing_angle(double phi, double dm2, double k, double rho) {
    if (!(dm2 > 0.0)) throw std::invalid_argument("matter_mixing_angle: dm2 must be positive");
    if (!(k > 0.0)) throw std::invalid_argument("matter_mixing_angle: k must be positive");
    const double s2 = std::sin(2.0 * phi);
    const double bracket = std::cos(2.0 * phi) - 2.0 * k * rho / dm2;
    const double a = bracket * bracket + s2 * s2;
    if (a == 0.0)
        throw std::domain_error(
            "matter_mixing_angle: degenerate point (vanishing mixing at exact resonance)");
    MswPoint point;
    point.A = a;
    // Continuous branch: Phi = phi at rho = 0, pi/4 at resonance, -> pi/2
    // as rho -> +infinity.
    point.Phi = 0.5 * std::atan2(s2, bracket);
    point.gamma = std::numeric_limits<double>::infinity();
    point.rho = rho;
    return point;
}

double matter_angle_derivative(double phi, double dm2, double k, double rho,
                               double drho_dx) {
    const MswPoint point = matter_mixing_angle(phi, dm2, k, rho);
    return std::sin(2.0 * phi) * k * drho_dx / (dm2 * point.A);
}

std::pair<double, double> matter_eigenvalues(const EffectiveHamiltonian& h) {
    if (h.masses.size() != 2 || h.mixer.dimension != 2)
        throw std::invalid_argument("matter_eigenvalues: two flavors required");
    if (!(h.k > 0.0)) throw std::invalid_argument("matter_eigenvalues: k must be positive");
    const double phi = h.mixer.provenance.phi_12;
    const double x1 = h.masses[0] * h.masses[0] / (2.0 * h.k);
    const double x2 = h.masses[1] * h.masses[1] / (2.0 * h.k);
    const double c = std::cos(phi), s = std::sin(phi);
    // R diag(x1,x2) R^T + diag(rho,0), shifted by k.
    const double m00 = c * c * x1 + s * s * x2 + h.rho;
    const double m11 = s * s * x1 + c * c * x2;
    const double off = c * s * (x2 - x1);
    const double mean = 0.5 * (m00 + m11);
    const double half_gap = std::hypot(0.5 * (m00 - m11), off);
    return {h.k + mean - half_gap, h.k + mean + half_gap};
}

double adiabaticity(double phi, double dm2, double k, double rho, double drho_dx) {
    const double dphi_dx = matter_angle_derivative(phi, dm2, k, rho, drho_dx);
    if (dphi_dx == 0.0) return std::numeric_limits<double>::infinity();
    return dm2 / (4.0 * k * std::abs(dphi_dx));
}

double crossing_probability(double gamma_r, double phi) {
    if (!(gamma_r >= 0.0)) throw std::invalid_argument("crossing_probability: gamma_r must be >= 0");
    const double s = std::sin(phi);
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("crossing_probability: phi must lie in (0, pi/2)");
    const double c = std::cos(phi);
    if (gamma_r == 0.0) return c * c;  // analytic limit of the 0/0 form
    if (std::isinf(gamma_r)) return 0.0;
    const double a = 0.5 * std::numbers::pi * gamma_r;
    const double b = a / (s * s);
    const double denom = -std::expm1(-b);
    return (std::expm1(-a) - std::expm1(-b)) / denom;
}

double asymptotic_transition(double P_c, double Phi_i, double Phi_f) {
    if (P_c < 0.0 || P_c > 1.0)
        throw std::invalid_argument("asymptotic_transition: P_c must lie in [0, 1]");
    double p = 0.5 - (0.5 - P_c) * std::cos(2.0 * Phi_f) * std::cos(2.0 * Phi_i);
    if (p < 0.0 && p > -1e-12) p = 0.0;
    if (p > 1.0 && p < 1.0 + 1e-12) p = 1.0;
    return p;
}

double continuum_phase(double theta1, double theta2, double k, double t) {
    if (!(k > 0.0)) throw std::invalid_argument("continuum_phase: k must be positive");
    return (theta2 * theta2 - theta1 * theta1) * t / (2.0 * k);
}

}  // namespace nuwalk::oracle
