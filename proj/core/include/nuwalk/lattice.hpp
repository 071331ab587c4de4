#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nuwalk/mixing.hpp"

namespace nuwalk {

enum class Spin { up = 0, down = 1 };
enum class Basis { mass, flavor };
enum class Boundary { periodic };

/// Lattice spacing/timestep epsilon and the per-flavor coin angles theta_h.
/// The per-step rotation angle of flavor h's coin is epsilon * theta_h; it
/// encodes the mass of that flavor.
struct CoinParameters {
    double epsilon = 1.0;
    std::vector<double> thetas;

    /// epsilon > 0, one theta per flavor, |epsilon*theta| < pi/2.
    void validate(int n_flavors) const;
};

/// Dimensionless matter density over the lattice: uniform, linear in the
/// coordinate x, or tabulated per site.
struct MatterProfile {
    enum class Kind { uniform, linear, table };

    Kind kind = Kind::uniform;
    double rho0 = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> values;

    static MatterProfile uniform(double rho0);
    static MatterProfile linear(double slope, double intercept);
    static MatterProfile table(std::vector<double> values);

    /// Density at site p (x = p * epsilon; table profiles index by p).
    double at_site(int p, double epsilon) const;
    /// Density at coordinate x (table profiles use the nearest site).
    double at_coordinate(double x, double epsilon) const;
};

/// The walker wavefunction: complex amplitudes indexed by
/// (site p, flavor h, spin s), stored site-major. basis records whether the
/// amplitudes are expressed in the mass or the flavor basis.
struct LatticeState {
    int n_sites = 0;
    int n_flavors = 0;
    Basis basis = Basis::flavor;
    Eigen::VectorXcd amplitudes;

    static LatticeState zero(int n_sites, int n_flavors, Basis basis);

    int index(int p, int h, Spin s) const {
        return (p * n_flavors + h) * 2 + static_cast<int>(s);
    }
    std::complex<double>& at(int p, int h, Spin s) { return amplitudes[index(p, h, s)]; }
    const std::complex<double>& at(int p, int h, Spin s) const { return amplitudes[index(p, h, s)]; }

    double norm() const { return amplitudes.norm(); }

    /// n_sites >= 2, amplitude count n_sites*n_flavors*2, norm within
    /// 1e-12 of 1.
    void validate() const;
};

/// One walk step: coins per flavor, the mixer conjugation, the
/// spin-dependent translation, and (optionally) the matter phase.
struct StepOperatorSpec {
    CoinParameters coins;
    FlavorMixer mixer;
    std::optional<MatterProfile> matter;
    Boundary boundary = Boundary::periodic;
};

/// [[cos(eps*theta), i sin(eps*theta)], [i sin(eps*theta), cos(eps*theta)]]
Eigen::Matrix2cd build_coin(double epsilon, double theta);

/// Spin-dependent translation on the periodic lattice: for every flavor the
/// new up amplitude at site p is the old up amplitude at p+1 (mod n_sites)
/// and the new down amplitude at p is the old down amplitude at p-1.
LatticeState shift(const LatticeState& state);

/// V . R (sum_h S Q_h) R^dagger applied to a flavor-basis state. V is the
/// identity without matter; otherwise it multiplies the flavor-0 (electron)
/// amplitudes at site p, both spin components, by exp(i eps rho_p).
LatticeState step(const LatticeState& state, const StepOperatorSpec& spec);

/// Normalized plane wave exp(i kappa p)/sqrt(n_sites) with
/// kappa = 2 pi mode_index / n_sites, concentrated on one flavor and spin.
/// An exact eigenvector of shift(). Tagged flavor-basis.
LatticeState plane_wave_state(int n_sites, int mode_index, int n_flavors,
                              int flavor, Spin spin);

/// Per-flavor probability: sum_p |psi_up|^2 + |psi_down|^2. Requires a
/// normalized state.
std::vector<double> flavor_probabilities(const LatticeState& state);

/// Apply R (mass -> flavor) or R^dagger (flavor -> mass) sitewise and
/// retag the state.
LatticeState to_flavor_basis(const LatticeState& state, const FlavorMixer& mixer);
LatticeState to_mass_basis(const LatticeState& state, const FlavorMixer& mixer);

}  // namespace nuwalk
