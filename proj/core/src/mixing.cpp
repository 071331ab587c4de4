#include "nuwalk/mixing.hpp"

#include <cmath>
#include <stdexcept>

namespace nuwalk {

MixingAngles MixingAngles::two_flavor(double phi12) {
    MixingAngles a;
    a.flavors = 2;
    a.phi_12 = phi12;
    return a;
}

MixingAngles MixingAngles::three_flavor(double phi12, double phi13, double phi23) {
    MixingAngles a;
    a.flavors = 3;
    a.phi_12 = phi12;
    a.phi_13 = phi13;
    a.phi_23 = phi23;
    return a;
}

bool FlavorMixer::is_identity() const {
    return matrix.isIdentity(0.0);
}

FlavorMixer identity_mixer(int dimension) {
    if (dimension != 2 && dimension != 3)
        throw std::invalid_argument("mixer dimension must be 2 or 3");
    FlavorMixer m;
    m.dimension = dimension;
    m.matrix = Eigen::MatrixXcd::Identity(dimension, dimension);
    m.provenance.flavors = dimension;
    return m;
}

FlavorMixer rotation_2flavor(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    FlavorMixer m;
    m.dimension = 2;
    m.matrix = Eigen::MatrixXcd(2, 2);
    m.matrix << c, s, -s, c;
    m.provenance = MixingAngles::two_flavor(phi);
    return m;
}

Eigen::Matrix3cd gell_mann(int index) {
    using namespace std::complex_literals;
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    switch (index) {
        case 2:
            m(0, 1) = -1i;
            m(1, 0) = 1i;
            break;
        case 5:
            m(0, 2) = -1i;
            m(2, 0) = 1i;
            break;
        case 7:
            m(1, 2) = -1i;
            m(2, 1) = 1i;
            break;
        default:
            throw std::invalid_argument("gell_mann: only indices 2, 5 and 7 are supported");
    }
    return m;
}

namespace {

// exp(i phi lambda_a) for a in {2,5,7} is a plane rotation in the block the
// generator acts on.
Eigen::Matrix3cd plane_rotation(int i, int j, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
    m(i, i) = c;
    m(i, j) = s;
    m(j, i) = -s;
    m(j, j) = c;
    return m;
}

}  // namespace

FlavorMixer pmns(const MixingAngles& angles) {
    const Eigen::Matrix3cd r = plane_rotation(1, 2, angles.phi_23) *
                               plane_rotation(0, 2, angles.phi_13) *
                               plane_rotation(0, 1, angles.phi_12);
    FlavorMixer m;
    m.dimension = 3;
    m.matrix = r;
    m.provenance = angles;
    m.provenance.flavors = 3;
    return m;
}

FlavorMixer make_mixer(const MixingAngles& angles) {
    if (angles.flavors == 2) return rotation_2flavor(angles.phi_12);
    if (angles.flavors == 3) return pmns(angles);
    throw std::invalid_argument("mixing angles must describe 2 or 3 flavors");
}

}  // namespace nuwalk
