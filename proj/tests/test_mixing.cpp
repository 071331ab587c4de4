#include <doctest.h>

#include <complex>
#include <random>

#include "nuwalk/mixing.hpp"
#include "support.hpp"

using namespace nuwalk;
using namespace std::complex_literals;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("mixing") {

TEST_CASE("two-flavor rotation") {
    CHECK(max_abs(rotation_2flavor(0.0).matrix - Eigen::Matrix2cd::Identity()) == 0.0);

    const FlavorMixer maximal = rotation_2flavor(std::numbers::pi / 4);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(maximal.matrix(0, 0).real() == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(maximal.matrix(0, 1).real() == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(maximal.matrix(1, 0).real() == doctest::Approx(-inv_sqrt2).epsilon(1e-15));

    const FlavorMixer r = rotation_2flavor(0.34);
    CHECK(r.matrix(0, 0).real() == doctest::Approx(0.942754665528346).epsilon(1e-12));
    CHECK(r.matrix(0, 1).real() == doctest::Approx(0.333487092140814).epsilon(1e-12));
    CHECK(r.matrix(1, 0).real() == doctest::Approx(-0.333487092140814).epsilon(1e-12));
    CHECK(r.provenance.phi_12 == 0.34);
}

TEST_CASE("gell-mann matrices") {
    const Eigen::Matrix3cd l2 = gell_mann(2);
    CHECK(l2(0, 1) == -1i);
    CHECK(l2(1, 0) == 1i);
    CHECK(max_abs(l2) == 1.0);

    const Eigen::Matrix3cd l5 = gell_mann(5);
    CHECK(l5(0, 2) == -1i);
    CHECK(l5(2, 0) == 1i);

    const Eigen::Matrix3cd l7 = gell_mann(7);
    CHECK(l7(1, 2) == -1i);
    CHECK(l7(2, 1) == 1i);

    for (int index : {2, 5, 7}) {
        const Eigen::Matrix3cd l = gell_mann(index);
        CHECK(max_abs(l - l.adjoint()) == 0.0);
        CHECK(std::abs(l.trace()) == 0.0);
    }
    CHECK_THROWS_AS(gell_mann(1), std::invalid_argument);
    CHECK_THROWS_AS(gell_mann(8), std::invalid_argument);
}

TEST_CASE("gell-mann exponential identity") {
    // exp(i phi l) = I + i l sin(phi) + l^2 (cos(phi) - 1), since l^3 = l
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double phi = angle(rng);
        for (int index : {2, 5, 7}) {
            const Eigen::Matrix3cd l = gell_mann(index);
            const Eigen::Matrix3cd closed = Eigen::Matrix3cd::Identity() +
                                            1i * l * std::sin(phi) +
                                            l * l * (std::cos(phi) - 1.0);
            const Eigen::Matrix3cd series = testing::series_expm(1i * phi * l);
            CHECK(max_abs(closed - series) < 1e-13);
        }
    }
}

TEST_CASE("pmns examples") {
    CHECK(max_abs(pmns(MixingAngles::three_flavor(0, 0, 0)).matrix -
                  Eigen::Matrix3cd::Identity()) == 0.0);

    // a single angle embeds the two-flavor rotation in its block
    const FlavorMixer r12 = pmns(MixingAngles::three_flavor(0.41, 0, 0));
    const FlavorMixer r2 = rotation_2flavor(0.41);
    CHECK(max_abs(r12.matrix.block<2, 2>(0, 0) - r2.matrix) == 0.0);
    CHECK(r12.matrix(2, 2) == 1.0);

    const FlavorMixer r = pmns(MixingAngles::three_flavor(0.34, 0.54, 0.45));
    Eigen::Matrix3d expected;
    expected << 0.808608861019911, 0.286034774051954, 0.514135991653113,
        -0.511117065640904, 0.774322509429784, 0.373073714701255,
        -0.291395015555713, -0.564454390915164, 0.772321296796791;
    CHECK(max_abs(r.matrix - expected.cast<std::complex<double>>()) < 1e-12);
}

TEST_CASE("pmns against series exponential") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
    for (int trial = 0; trial < 25; ++trial) {
        const double p12 = angle(rng), p13 = angle(rng), p23 = angle(rng);
        const Eigen::Matrix3cd series = testing::series_expm(1i * p23 * gell_mann(7)) *
                                        testing::series_expm(1i * p13 * gell_mann(5)) *
                                        testing::series_expm(1i * p12 * gell_mann(2));
        const FlavorMixer closed = pmns(MixingAngles::three_flavor(p12, p13, p23));
        CHECK(max_abs(closed.matrix - series) < 1e-12);
    }
}

TEST_CASE("mixer properties") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
    for (int trial = 0; trial < 100; ++trial) {
        FlavorMixer m;
        if (trial % 2 == 0) {
            m = rotation_2flavor(angle(rng));
        } else {
            m = pmns(MixingAngles::three_flavor(angle(rng), angle(rng), angle(rng)));
        }
        const Eigen::MatrixXcd eye =
            Eigen::MatrixXcd::Identity(m.dimension, m.dimension);
        CHECK(max_abs(m.matrix * m.matrix.adjoint() - eye) < 1e-13);
        CHECK(std::abs(m.matrix.determinant() - 1.0) < 1e-13);
        CHECK(m.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("make_mixer dispatch") {
    CHECK(make_mixer(MixingAngles::two_flavor(0.2)).dimension == 2);
    CHECK(make_mixer(MixingAngles::three_flavor(0.2, 0.3, 0.4)).dimension == 3);
    MixingAngles bad;
    bad.flavors = 4;
    CHECK_THROWS_AS(make_mixer(bad), std::invalid_argument);
    CHECK_THROWS_AS(identity_mixer(1), std::invalid_argument);
    CHECK(identity_mixer(3).is_identity());
}

}  // TEST_SUITE
