#include <doctest.h>

#include <cmath>

#include "qlink/constants.hpp"
#include "qlink/gravity.hpp"

using namespace qlink;

namespace {
const GaussianPulse optical{{600e12, Unit::Hz}, {7e6, Unit::Hz}};
const GaussianPulse moessbauer{{14.4e3, Unit::eV}, {5e-9, Unit::eV}};
}  // namespace

TEST_CASE("redshift factor basics") {
    const auto earth = SchwarzschildBody::earth();
    CHECK(redshift_factor(earth, {6371.0, Unit::km}, {6371.0, Unit::km}) == 1.0);

    // Upsilon < 1 iff the emitter sits deeper than the receiver.
    CHECK(redshift_factor(earth, {7500.0, Unit::km}, {6371.0, Unit::km}) > 1.0);
    CHECK(redshift_factor(earth, {6371.0, Unit::km}, {7500.0, Unit::km}) < 1.0);

    CHECK_THROWS_AS(redshift_factor(earth, {1e-3, Unit::m}, {7500.0, Unit::km}),
                    domain_error);

    // Flat-space limit.
    const auto sun = SchwarzschildBody::sun();
    const double rs = constants::sun_schwarzschild_m;
    CHECK(redshift_factor(sun, {1e6 * rs, Unit::m}, {2e6 * rs, Unit::m}) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(redshift_delta(sun, {1e6 * rs, Unit::m}, {1e6 * rs, Unit::m}) == 0.0);
}

TEST_CASE("low-Earth-orbit link: delta about 5e-11") {
    const auto earth = SchwarzschildBody::earth();
    const double d = redshift_delta(earth, {6371.0, Unit::km}, {7500.0, Unit::km});
    CHECK(d == doctest::Approx(5.239e-11).epsilon(1e-3));
    CHECK(d > 4.5e-11);
    CHECK(d < 6e-11);

    // Swapping emitter and receiver leaves delta unchanged.
    const double swapped = redshift_delta(earth, {7500.0, Unit::km}, {6371.0, Unit::km});
    CHECK(swapped == doctest::Approx(d).epsilon(1e-9));
}

TEST_CASE("solar system link: delta about 7.4e-9") {
    const auto sun = SchwarzschildBody::sun();
    const double d = redshift_delta(sun, {1e8, Unit::km}, {4e13, Unit::km});
    CHECK(d == doctest::Approx(7.375e-9).epsilon(1e-3));
}

TEST_CASE("closed-form overlap") {
    CHECK(gaussian_overlap(optical, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // LEO optical case.
    const double d_leo = 5.23948e-11;
    const double o = gaussian_overlap(optical, d_leo);
    CHECK(o * o == doctest::Approx(0.9999948).epsilon(1e-6));

    // Proxima-distance optical case at the quoted delta.
    const double o2 = gaussian_overlap(optical, 7.5e-9);
    CHECK(o2 * o2 == doctest::Approx(0.901842).epsilon(1e-4));

    // Moessbauer X-ray line: underflows to zero.
    const double o3 = gaussian_overlap(moessbauer, d_leo);
    CHECK(o3 * o3 < 1e-300);

    CHECK_THROWS_AS(gaussian_overlap(optical, -0.1), domain_error);
    CHECK_THROWS_AS(gaussian_overlap(optical, 1.0), domain_error);
    CHECK_THROWS_AS(gaussian_overlap(GaussianPulse{{1e3, Unit::Hz}, {500.0, Unit::Hz}}, 0.1),
                    domain_error);  // peak/width <= 10
}

TEST_CASE("overlap is monotone non-increasing in delta and in peak/width") {
    double prev = 2.0;
    for (double d : {0.0, 1e-11, 1e-9, 1e-8, 1e-7, 1e-5, 1e-3, 0.1, 0.5}) {
        const double o = gaussian_overlap(optical, d);
        CHECK(o <= prev + 1e-15);
        prev = o;
    }
    const double d = 7.5e-9;
    double prev_ratio = 2.0;
    for (double ratio : {1e2, 1e4, 1e6, 1e8, 1e9}) {
        GaussianPulse p{{ratio, Unit::Hz}, {1.0, Unit::Hz}};
        const double o = gaussian_overlap(p, d);
        CHECK(o <= prev_ratio + 1e-15);
        prev_ratio = o;
    }
}

TEST_CASE("numeric overlap agrees with the closed form") {
    // delta = 0 integrates to 1.
    CHECK(gaussian_overlap_numeric(optical, 0.0) == doctest::Approx(1.0).epsilon(1e-9));

    // The three reference cases, to 1e-6 absolute.
    const double d_leo = 5.23948e-11;
    CHECK(std::abs(gaussian_overlap_numeric(optical, d_leo) -
                   gaussian_overlap(optical, d_leo)) < 1e-6);

    const double o_prox = gaussian_overlap_numeric(optical, 7.5e-9);
    CHECK(std::abs(o_prox - gaussian_overlap(optical, 7.5e-9)) < 1e-6);
    CHECK(o_prox * o_prox == doctest::Approx(0.901842).epsilon(1e-4));

    CHECK(std::abs(gaussian_overlap_numeric(moessbauer, d_leo) -
                   gaussian_overlap(moessbauer, d_leo)) < 1e-6);

    // Convergence toward the closed form as peak/width grows.
    double prev_gap = 1.0;
    for (double r : {1e2, 1e4, 1e6}) {
        GaussianPulse p{{r, Unit::Hz}, {1.0, Unit::Hz}};
        const double gap =
            std::abs(gaussian_overlap_numeric(p, 1e-3) - gaussian_overlap(p, 1e-3));
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
}

TEST_CASE("maximum coherent path bound l^2/r_S") {
    const auto sun = SchwarzschildBody{"sun", {3.0, Unit::km}};
    const auto bound = max_coherent_path(sun, {6e7, Unit::km});
    CHECK(convert(bound, Unit::ly).value == doctest::Approx(127.0).epsilon(1e-2));
    CHECK(convert(bound, Unit::pc).value == doctest::Approx(38.9).epsilon(1e-2));

    // Doubling the approach distance quadruples the bound.
    const auto bound2 = max_coherent_path(sun, {1.2e8, Unit::km});
    CHECK(bound2.value == doctest::Approx(4.0 * bound.value).epsilon(1e-12));

    const auto earth_bound =
        max_coherent_path(SchwarzschildBody::earth(), {6371.0, Unit::km});
    CHECK(earth_bound.value == doctest::Approx(4.576e15).epsilon(1e-3));

    CHECK(classify_path_against_bound(1e14, 4.576e15) == CoherenceFlag::ok);
    CHECK(classify_path_against_bound(1e15, 4.576e15) == CoherenceFlag::marginal);
    CHECK(classify_path_against_bound(5e15, 4.576e15) == CoherenceFlag::violated);

    CHECK_THROWS_AS(max_coherent_path(sun, {1.0, Unit::km}), domain_error);
}

TEST_CASE("fidelity report packages the pieces coherently") {
    const auto earth = SchwarzschildBody::earth();
    const auto rep = fidelity_report(earth, {6371.0, Unit::km}, {7500.0, Unit::km}, optical);
    CHECK(rep.delta == doctest::Approx(5.239e-11).epsilon(1e-3));
    CHECK(rep.overlap_sq == doctest::Approx(0.9999948).epsilon(1e-6));
    CHECK(!rep.effectively_zero);

    const auto xray = fidelity_report(earth, {6371.0, Unit::km}, {7500.0, Unit::km}, moessbauer);
    CHECK(xray.effectively_zero);
    CHECK(xray.overlap_sq < 1e-30);

    const auto trivial = fidelity_report(earth, {7000.0, Unit::km}, {7000.0, Unit::km}, optical);
    CHECK(trivial.upsilon == 1.0);
    CHECK(trivial.delta == 0.0);
    CHECK(trivial.overlap == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trivial.overlap_sq == doctest::Approx(1.0).epsilon(1e-12));

    // Swapped radii leave delta, hence the overlap, unchanged.
    const auto fwd = fidelity_report(earth, {6371.0, Unit::km}, {7500.0, Unit::km}, optical);
    const auto rev = fidelity_report(earth, {7500.0, Unit::km}, {6371.0, Unit::km}, optical);
    CHECK(fwd.delta == doctest::Approx(rev.delta).epsilon(1e-9));
    CHECK(fwd.overlap_sq == doctest::Approx(rev.overlap_sq).epsilon(1e-9));
}

TEST_CASE("orbital-motion factor is opt-in and changes the result") {
    const auto earth = SchwarzschildBody::earth();
    const double plain = redshift_factor(earth, {6371.0, Unit::km}, {7500.0, Unit::km});
    const double moving =
        redshift_factor(earth, {6371.0, Unit::km}, {7500.0, Unit::km}, true);
    CHECK(plain != moving);
}
