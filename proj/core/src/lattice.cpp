#include "nuwalk/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nuwalk {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_dimensions(const LatticeState& state, const StepOperatorSpec& spec) {
    const int n = state.n_flavors;
    if (spec.mixer.dimension != n)
        throw std::invalid_argument(
            "step: mixer dimension " + std::to_string(spec.mixer.dimension) +
            " does not match state with " + std::to_string(n) + " flavors");
    spec.coins.validate(n);
    if (spec.matter && spec.matter->kind == MatterProfile::Kind::table &&
        static_cast<int>(spec.matter->values.size()) != state.n_sites)
        throw std::invalid_argument(
            "step: matter table has " + std::to_string(spec.matter->values.size()) +
            " entries for " + std::to_string(state.n_sites) + " sites");
}

// (R (x) I_2) applied to every site's flavor(x)spin block.
void apply_mixer_in_place(LatticeState& state, const Eigen::MatrixXcd& r) {
    const int n = state.n_flavors;
    Eigen::VectorXcd block(n);
    for (int p = 0; p < state.n_sites; ++p) {
        for (int s = 0; s < 2; ++s) {
            for (int h = 0; h < n; ++h)
                block[h] = state.amplitudes[(p * n + h) * 2 + s];
            for (int h = 0; h < n; ++h) {
                std::complex<double> acc = 0.0;
                for (int g = 0; g < n; ++g) acc += r(h, g) * block[g];
                state.amplitudes[(p * n + h) * 2 + s] = acc;
            }
        }
    }
}

}  // namespace

void CoinParameters::validate(int n_flavors) const {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("coin parameters: epsilon must be positive");
    if (static_cast<int>(thetas.size()) != n_flavors)
        throw std::invalid_argument("coin parameters: expected " + std::to_string(n_flavors) +
                                    " coin angles, got " + std::to_string(thetas.size()));
    for (double theta : thetas) {
        const double angle = epsilon * theta;
        if (!(std::abs(angle) < std::numbers::pi / 2))
            throw std::invalid_argument(
                "coin parameters: epsilon*theta = " + std::to_string(angle) +
                " outside (-pi/2, pi/2)");
    }
}

MatterProfile MatterProfile::uniform(double rho0) {
    MatterProfile m;
    m.kind = Kind::uniform;
    m.rho0 = rho0;
    return m;
}

MatterProfile MatterProfile::linear(double slope, double intercept) {
    MatterProfile m;
    m.kind = Kind::linear;
    m.slope = slope;
    m.intercept = intercept;
    return m;
}

MatterProfile MatterProfile::table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("matter table must not be empty");
    MatterProfile m;
    m.kind = Kind::table;
    m.values = std::move(values);
    return m;
}

double MatterProfile::at_site(int p, double epsilon) const {
    switch (kind) {
        case Kind::uniform: return rho0;
        case Kind::linear: return slope * (p * epsilon) + intercept;
        case Kind::table: return values.at(static_cast<std::size_t>(p));
    }
    throw std::logic_error("unreachable");
}

double MatterProfile::at_coordinate(double x, double epsilon) const {
    switch (kind) {
        case Kind::uniform: return rho0;
        case Kind::linear: return slope * x + intercept;
        case Kind::table: {
            long p = std::lround(x / epsilon);
            if (p < 0) p = 0;
            const long last = static_cast<long>(values.size()) - 1;
            if (p > last) p = last;
            return values[static_cast<std::size_t>(p)];
        }
    }
    throw std::logic_error("unreachable");
}

LatticeState LatticeState::zero(int n_sites, int n_flavors, Basis basis) {
    if (n_sites < 2) throw std::invalid_argument("lattice state: n_sites must be >= 2");
    if (n_flavors != 2 && n_flavors != 3)
        throw std::invalid_argument("lattice state: n_flavors must be 2 or 3");
    LatticeState s;
    s.n_sites = n_sites;
    s.n_flavors = n_flavors;
    s.basis = basis;
    s.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_sites) * n_flavors * 2);
    return s;
}

void LatticeState::validate() const {
    if (n_sites < 2) throw std::invalid_argument("lattice state: n_sites must be >= 2");
    if (amplitudes.size() != static_cast<Eigen::Index>(n_sites) * n_flavors * 2)
        throw std::invalid_argument("lattice state: amplitude count does not match dimensions");
    if (std::abs(norm() - 1.0) > kNormTolerance)
        throw std::invalid_argument("lattice state: not normalized (|norm-1| = " +
                                    std::to_string(std::abs(norm() - 1.0)) + ")");
}

Eigen::Matrix2cd build_coin(double epsilon, double theta) {
    using namespace std::complex_literals;
    const double c = std::cos(epsilon * theta);
    const double s = std::sin(epsilon * theta);
    Eigen::Matrix2cd q;
    q << c, 1i * s, 1i * s, c;
    return q;
}

LatticeState shift(const LatticeState& state) {
    const int N = state.n_sites;
    const int n = state.n_flavors;
    LatticeState out = state;
    for (int p = 0; p < N; ++p) {
        const int up_src = (p + 1) % N;
        const int down_src = (p + N - 1) % N;
        for (int h = 0; h < n; ++h) {
            out.amplitudes[(p * n + h) * 2 + 0] = state.amplitudes[(up_src * n + h) * 2 + 0];
            out.amplitudes[(p * n + h) * 2 + 1] = state.amplitudes[(down_src * n + h) * 2 + 1];
        }
    }
    return out;
}

LatticeState step(const LatticeState& state, const StepOperatorSpec& spec) {
    if (state.basis != Basis::flavor)
        throw std::invalid_argument("step: state must be expressed in the flavor basis");
    check_dimensions(state, spec);

    const int N = state.n_sites;
    const int n = state.n_flavors;
    const double eps = spec.coins.epsilon;

    LatticeState work = state;
    if (!spec.mixer.is_identity())
        apply_mixer_in_place(work, spec.mixer.matrix.adjoint());

    for (int h = 0; h < n; ++h) {
        const double c = std::cos(eps * spec.coins.thetas[h]);
        const double s = std::sin(eps * spec.coins.thetas[h]);
        const std::complex<double> is(0.0, s);
        for (int p = 0; p < N; ++p) {
            const int i = (p * n + h) * 2;
            const std::complex<double> up = work.amplitudes[i];
            const std::complex<double> down = work.amplitudes[i + 1];
            work.amplitudes[i] = c * up + is * down;
            work.amplitudes[i + 1] = is * up + c * down;
        }
    }

    LatticeState out = shift(work);

    if (!spec.mixer.is_identity())
        apply_mixer_in_place(out, spec.mixer.matrix);

    if (spec.matter) {
        for (int p = 0; p < N; ++p) {
            const double rho = spec.matter->at_site(p, eps);
            const std::complex<double> phase = std::polar(1.0, eps * rho);
            out.amplitudes[(p * n + 0) * 2 + 0] *= phase;
            out.amplitudes[(p * n + 0) * 2 + 1] *= phase;
        }
    }
    return out;
}

LatticeState plane_wave_state(int n_sites, int mode_index, int n_flavors, int flavor,
                              Spin spin) {
    if (mode_index < 0 || mode_index >= n_sites)
        throw std::invalid_argument("plane wave: mode_index " + std::to_string(mode_index) +
                                    " outside [0, " + std::to_string(n_sites) + ")");
    if (flavor < 0 || flavor >= n_flavors)
        throw std::invalid_argument("plane wave: flavor index out of range");
    LatticeState s = LatticeState::zero(n_sites, n_flavors, Basis::flavor);
    const double kappa = 2.0 * std::numbers::pi * mode_index / n_sites;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_sites));
    for (int p = 0; p < n_sites; ++p)
        s.at(p, flavor, spin) = std::polar(scale, kappa * p);
    return s;
}

std::vector<double> flavor_probabilities(const LatticeState& state) {
    // looser than the construction tolerance: rounding drift accumulates
    // over long runs (1e-10 is the budget after 10^3 steps)
    if (std::abs(state.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("flavor_probabilities: state is not normalized");
    std::vector<double> probs(state.n_flavors, 0.0);
    const int n = state.n_flavors;
    for (int p = 0; p < state.n_sites; ++p)
        for (int h = 0; h < n; ++h)
            probs[h] += std::norm(state.amplitudes[(p * n + h) * 2 + 0]) +
                        std::norm(state.amplitudes[(p * n + h) * 2 + 1]);
    return probs;
}

LatticeState to_flavor_basis(const LatticeState& state, const FlavorMixer& mixer) {
    if (state.basis != Basis::mass)
        throw std::invalid_argument("to_flavor_basis: state is not in the mass basis");
    if (mixer.dimension != state.n_flavors)
        throw std::invalid_argument("to_flavor_basis: mixer dimension mismatch");
    LatticeState out = state;
    apply_mixer_in_place(out, mixer.matrix);
    out.basis = Basis::flavor;
    return out;
}

LatticeState to_mass_basis(const LatticeState& state, const FlavorMixer& mixer) {
    if (state.basis != Basis::flavor)
        throw std::invalid_argument("to_mass_basis: state is not in the flavor basis");
    if (mixer.dimension != state.n_flavors)
        throw std::invalid_argument("to_mass_basis: mixer dimension mismatch");
    LatticeState out = state;
    apply_mixer_in_place(out, mixer.matrix.adjoint());
    out.basis = Basis::mass;
    return out;
}

}  // namespace nuwalk
