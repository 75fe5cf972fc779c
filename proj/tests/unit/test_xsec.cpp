#include <doctest.h>

#include <cmath>

#include "qlink/constants.hpp"
#include "qlink/units.hpp"
#include "qlink/xsec.hpp"

using namespace qlink;

TEST_CASE("Thomson cross section for the electron") {
    const auto sigma = convert(thomson_cross_section(ChargedSpecies::electron()), Unit::cm2);
    CHECK(sigma.value == doctest::Approx(6.65e-25).epsilon(5e-3));
}

TEST_CASE("Thomson cross section scales as 1/m^2 and Z^4") {
    const double e = thomson_cross_section(ChargedSpecies::electron()).value;

    // Proton value from the electron value and the mass ratio.
    const double mass_ratio = constants::electron_mass_eV / constants::proton_mass_eV;
    const double expected_proton_cm2 = 6.652458e-25 * mass_ratio * mass_ratio;
    const auto p = convert(thomson_cross_section(ChargedSpecies::proton()), Unit::cm2);
    CHECK(p.value == doctest::Approx(expected_proton_cm2).epsilon(1e-6));
    CHECK(p.value == doctest::Approx(1.97e-31).epsilon(2e-3));

    ChargedSpecies heavy{"heavy", {2.0 * constants::electron_mass_eV, Unit::eV}, 1};
    CHECK(thomson_cross_section(heavy).value == doctest::Approx(e / 4.0).epsilon(1e-12));

    // Ratio of two species is exactly (m2/m1)^2 for equal charge.
    ChargedSpecies a{"a", {1e6, Unit::eV}, 1};
    ChargedSpecies b{"b", {3e6, Unit::eV}, 1};
    CHECK(thomson_cross_section(a).value / thomson_cross_section(b).value ==
          doctest::Approx(9.0).epsilon(1e-12));

    // Alpha particle: Z^4 enhancement over a fictitious Z=1 twin.
    ChargedSpecies alpha_z1{"alpha_z1", {constants::alpha_particle_mass_eV, Unit::eV}, 1};
    CHECK(thomson_cross_section(ChargedSpecies::alpha()).value ==
          doctest::Approx(16.0 * thomson_cross_section(alpha_z1).value).epsilon(1e-12));

    CHECK(thomson_cross_section(ChargedSpecies::neutral("h", 1e9)).value == 0.0);
    CHECK_THROWS_AS(thomson_cross_section(ChargedSpecies{"bad", {0.0, Unit::eV}, 1}),
                    domain_error);
}

TEST_CASE("photon-photon cross section: pinned value, scaling, domain") {
    const auto sigma = convert(photon_photon_cross_section({5.07, Unit::eV}), Unit::cm2);
    CHECK(sigma.value == doctest::Approx(1.19e-61).epsilon(2e-2));

    CHECK(photon_photon_cross_section({0.0, Unit::eV}).value == 0.0);

    const double s1 = photon_photon_cross_section({5.07, Unit::eV}).value;
    const double s2 = photon_photon_cross_section({10.14, Unit::eV}).value;
    CHECK(s2 == doctest::Approx(64.0 * s1).epsilon(1e-12));

    // omega^6 scaling across several decades.
    for (double k : {3.0, 10.0, 100.0}) {
        const double base = photon_photon_cross_section({1.0, Unit::eV}).value;
        const double scaled = photon_photon_cross_section({k, Unit::eV}).value;
        CHECK(scaled == doctest::Approx(std::pow(k, 6) * base).epsilon(1e-12));
    }

    CHECK_THROWS_AS(photon_photon_cross_section({constants::electron_mass_eV, Unit::eV}),
                    domain_error);
    CHECK(photon_photon_cross_section({constants::electron_mass_eV - 1.0, Unit::eV}).value >
          0.0);
}

TEST_CASE("centre-of-momentum energy conventions") {
    const Quantity e{1e5, Unit::eV};
    CHECK(com_energy(e, e, AngleModel::head_on()).value == doctest::Approx(1e5).epsilon(1e-12));
    CHECK(com_energy({1.0, Unit::eV}, {4.0, Unit::eV}, AngleModel::fixed(0.0)).value ==
          doctest::Approx(0.0));

    // Head-on against the mean-energy microwave photon.
    const auto w = com_energy({1e5, Unit::eV}, {6.34e-4, Unit::eV}, AngleModel::head_on());
    CHECK(w.value == doctest::Approx(std::sqrt(1e5 * 6.34e-4)).epsilon(1e-12));
    CHECK(w.value == doctest::Approx(7.96).epsilon(1e-3));

    // isotropic mean sits a factor sqrt(2) under head-on.
    const auto wi =
        com_energy({1e5, Unit::eV}, {6.34e-4, Unit::eV}, AngleModel::isotropic_mean());
    CHECK(w.value == doctest::Approx(wi.value * std::sqrt(2.0)).epsilon(1e-12));
}
