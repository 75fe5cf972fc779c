#include <doctest.h>

#include <array>
#include <cmath>

#include "qlink/constants.hpp"
#include "qlink/units.hpp"

using namespace qlink;

namespace {
bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("length conversions hit the defining constants") {
    CHECK(close(convert({1.0, Unit::pc}, Unit::m).value, 3.0857e16, 1e-4));
    CHECK(close(convert({1.0, Unit::AU}, Unit::m).value, 1.495979e11, 1e-6));
    CHECK(convert({1.0, Unit::km}, Unit::m).value == 1000.0);
    CHECK(close(convert({1.0, Unit::ly}, Unit::m).value, 9.4607e15, 1e-4));
}

TEST_CASE("round trips are exact to 1e-12 for all compatible pairs") {
    const std::array<Unit, 20> all{
        Unit::eV, Unit::J, Unit::m, Unit::cm, Unit::km, Unit::pc, Unit::AU,
        Unit::ly, Unit::s, Unit::Hz, Unit::K, Unit::per_m3, Unit::per_cm3,
        Unit::per_m2_s, Unit::per_cm2_s, Unit::m2, Unit::cm2, Unit::per_s,
        Unit::W_per_m2_nm, Unit::nW_per_m2_sr};
    for (auto u1 : all)
        for (auto u2 : all) {
            if (dimension_of(u1) != dimension_of(u2)) continue;
            const Quantity q{1.234567890123e5, u1};
            const auto back = convert(convert(q, u2), u1);
            CHECK(close(back.value, q.value, 1e-12));
        }
}

TEST_CASE("incompatible conversions and arithmetic are rejected") {
    CHECK_THROWS_AS(convert({1.0, Unit::eV}, Unit::m), dimension_error);
    CHECK_THROWS_AS(convert({1.0, Unit::per_cm3}, Unit::per_cm2_s), dimension_error);
    CHECK_THROWS_AS((void)(Quantity(1.0, Unit::s) + Quantity(1.0, Unit::K)),
                    dimension_error);
    CHECK_THROWS_WITH_AS(convert({1.0, Unit::pc}, Unit::eV),
                         doctest::Contains("pc"), dimension_error);
}

TEST_CASE("parse_quantity grammar") {
    const auto q = parse_quantity("6.6 cm^-3");
    CHECK(q.unit == Unit::per_cm3);
    CHECK(q.value == 6.6);

    const auto kev = parse_quantity("14.4 keV");
    CHECK(kev.unit == Unit::eV);
    CHECK(close(kev.value, 1.44e4, 1e-12));

    CHECK(parse_quantity("600 THz").value == 600e12);
    CHECK(parse_quantity("5 neV").value == doctest::Approx(5e-9));
    CHECK(parse_quantity("2e-4eV").value == 2e-4);
    CHECK(parse_quantity("  1.3 pc ").unit == Unit::pc);
    CHECK(parse_quantity("1 m^-2 s^-1").unit == Unit::per_m2_s);

    CHECK_THROWS_WITH_AS(parse_quantity("1 parsec"), doctest::Contains("pc"), parse_error);
    CHECK_THROWS_AS(parse_quantity("bogus"), parse_error);
    CHECK_THROWS_AS(parse_quantity("1.5"), parse_error);
    try {
        parse_quantity("xx eV");
    } catch (const parse_error& e) {
        CHECK(e.offset == 0);
    }
}

TEST_CASE("energy-frequency-wavelength ladder: E = h nu = h c / lambda") {
    const double e = as_energy_eV({600e12, Unit::Hz});
    CHECK(close(e, constants::h_planck_eV_s * 600e12, 1e-15));

    const double lambda_nm = photon_wavelength_nm_from_energy_eV(e);
    const double e_back = photon_energy_eV_from_wavelength_nm(lambda_nm);
    CHECK(close(e_back, e, 1e-9));

    // hbar*c and h*c agree through 2 pi to the stated precision.
    CHECK(close(constants::h_planck_eV_s * constants::c_m_per_s,
                2.0 * constants::pi * constants::hbar_c_eV_m, 1e-9));

    CHECK(close(as_energy_eV({1.0, Unit::K}), constants::k_boltzmann_eV_per_K, 1e-15));
    CHECK_THROWS_AS(as_energy_eV({1.0, Unit::m}), dimension_error);
}
