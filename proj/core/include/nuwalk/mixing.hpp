#pragma once

#include <Eigen/Dense>

namespace nuwalk {

/// Mixing angles generating a flavor mixer. Two-flavor mixers use phi_12
/// only; three-flavor mixers use the (1-2), (1-3) and (2-3) plane angles,
/// i.e. the e-mu, e-tau and mu-tau pairs. All angles are in radians.
struct MixingAngles {
    int flavors = 2;
    double phi_12 = 0.0;
    double phi_13 = 0.0;
    double phi_23 = 0.0;

    static MixingAngles two_flavor(double phi12);
    static MixingAngles three_flavor(double phi12, double phi13, double phi23);
};

/// An n x n unitary relating the mass and flavor bases, together with the
/// angles it was built from. For the real-angle parameterizations used here
/// the matrix is real-orthogonal with determinant +1.
struct FlavorMixer {
    int dimension = 2;
    Eigen::MatrixXcd matrix;
    MixingAngles provenance;

    bool is_identity() const;
};

FlavorMixer identity_mixer(int dimension);

/// [[cos phi, sin phi], [-sin phi, cos phi]]
FlavorMixer rotation_2flavor(double phi);

/// Gell-Mann matrices lambda_2, lambda_5, lambda_7 (the antisymmetric
/// generators; the only ones needed for a real mixing matrix).
/// Other indices are rejected.
Eigen::Matrix3cd gell_mann(int index);

/// exp(i phi_23 l7) * exp(i phi_13 l5) * exp(i phi_12 l2), evaluated in
/// closed form as a product of plane rotations (each lambda satisfies
/// lambda^3 = lambda, so exp(i phi lambda) = I + i lambda sin phi
/// + lambda^2 (cos phi - 1), a plane rotation).
FlavorMixer pmns(const MixingAngles& angles);

/// Dispatch on angles.flavors: 2 -> rotation_2flavor, 3 -> pmns.
FlavorMixer make_mixer(const MixingAngles& angles);

}  // namespace nuwalk
