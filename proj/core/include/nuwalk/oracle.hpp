#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nuwalk/lattice.hpp"
#include "nuwalk/mixing.hpp"

namespace nuwalk::oracle {

/// A plane-wave mode on the lattice: per-site wavenumber kappa = k * epsilon.
struct PlaneWaveSpec {
    double kappa = 0.0;
    std::optional<int> mode_index;

    /// Relativistic-regime check: kappa >= 5 * max(eps * theta_h).
    bool relativistic(double max_eps_theta) const { return kappa >= 5.0 * max_eps_theta; }
};

/// Inputs of the linearized (relativistic) flavor Hamiltonian: wavenumber k,
/// continuum mass parameters theta_h, the mixer, and a density evaluation
/// point.
struct EffectiveHamiltonian {
    double k = 0.0;
    std::vector<double> masses;
    FlavorMixer mixer;
    double rho = 0.0;
};

/// Physical experiment parameters: dm2 in eV^2, E in GeV, L in km.
struct ExperimentSpec {
    double dm2_ev2 = 0.0;
    double energy_gev = 1.0;
    double baseline_km = 0.0;
    MixingAngles angles;
};

/// Matter mixing data at one density: the matter angle Phi, the resonance
/// factor A, the adiabaticity gamma (infinity for constant density) and the
/// density itself.
struct MswPoint {
    double Phi = 0.0;
    double A = 1.0;
    double gamma = 0.0;
    double rho = 0.0;
};

struct ContinuumEnergies {
    std::vector<double> energies;
    bool relativistic = true;
};

/// Exact one-step operator for a plane wave:
/// V . R (sum_h D(kappa) Q_h) R^dagger with D(kappa) = diag(e^{i kappa},
/// e^{-i kappa}). With uniform_rho set, V multiplies the electron-flavor
/// rows by exp(i eps rho). Basis ordering matches LatticeState's per-site
/// block (flavor-major, spin within).
Eigen::MatrixXcd momentum_step_matrix(double kappa, const CoinParameters& coins,
                                      const FlavorMixer& mixer,
                                      std::optional<double> uniform_rho = std::nullopt);

/// Eigenphase of the single-flavor one-step operator D(kappa) Q:
/// omega = arccos(cos(eps*theta) cos(kappa)) in [0, pi].
double lattice_dispersion(double eps_theta, double kappa);

/// |sum_i R_{beta i} e^{-i E_i t} R*_{alpha i}|^2.
double vacuum_transition_probability(const FlavorMixer& mixer,
                                     const std::vector<double>& energies, double t,
                                     int alpha, int beta);

/// E_i = k + theta_i^2 / (2k) per mass eigenstate; the relativistic flag is
/// false when k < 5 max theta_i (a warning, not a failure).
ContinuumEnergies continuum_energies(const EffectiveHamiltonian& h);

/// phi(L) = 5.08 dm2 L / (2 E), dm2 in eV^2, L in km, E in GeV.
double physical_phase(const ExperimentSpec& spec);

/// Resonance density dm2 cos(2 phi) / (2k).
double resonance_density(double phi, double dm2, double k);

/// A = [cos 2phi - 2 k rho / dm2]^2 + sin^2 2phi and sin^2 2Phi =
/// sin^2 2phi / A, with the branch continuous in rho: Phi -> phi as
/// rho -> 0, Phi = pi/4 at resonance, Phi -> pi/2 as rho -> +inf.
/// Throws std::domain_error in the degenerate case A = 0 (phi in {0, pi/2}
/// at exact resonance). The returned gamma is the constant-density sentinel
/// +infinity.
MswPoint matter_mixing_angle(double phi, double dm2, double k, double rho);

/// dPhi/dx from the closed form tan 2Phi = sin 2phi / (cos 2phi - 2k rho/dm2)
/// by the chain rule: sin(2phi) k drho_dx / (dm2 A).
double matter_angle_derivative(double phi, double dm2, double k, double rho,
                               double drho_dx);

/// Eigenvalues of k I + R diag(theta^2)/(2k) R^dagger + diag(rho, 0),
/// sorted ascending. Two flavors only.
std::pair<double, double> matter_eigenvalues(const EffectiveHamiltonian& h);

/// gamma = dm2 / (4 k |dPhi/dx|); +infinity when the density is constant.
double adiabaticity(double phi, double dm2, double k, double rho, double drho_dx);

/// P_c = [exp(-pi g/2) - exp(-pi g/(2 sin^2 phi))] /
///       [1 - exp(-pi g/(2 sin^2 phi))]; the g -> 0 limit cos^2 phi is
/// taken analytically.
double crossing_probability(double gamma_r, double phi);

/// P = 1/2 - (1/2 - P_c) cos 2Phi_f cos 2Phi_i (the leading sign makes the
/// result a probability; clamped to [0,1] only within 1e-12 of the
/// boundary).
double asymptotic_transition(double P_c, double Phi_i, double Phi_f);

/// phi(t) = (theta2^2 - theta1^2) t / (2k).
double continuum_phase(double theta1, double theta2, double k, double t);

}  // namespace nuwalk::oracle
