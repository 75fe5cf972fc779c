#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "qlink/teleport.hpp"

using namespace qlink;

namespace {

// Independent oracle: expand |chi> x |shared> in the 8-dim product basis,
// project Alice's pair onto a Bell outcome, and return Bob's (normalized)
// branch vector. Index convention: a'*4 + a*2 + b.
CVector expansion_oracle(const PureState& chi, BellKind shared, BellKind outcome) {
    const auto s = make_bell(shared);
    CVector full = CVector::Zero(8);
    for (int ap = 0; ap < 2; ++ap)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                full(ap * 4 + a * 2 + b) = chi.amplitudes(ap) * s.amplitudes(a * 2 + b);

    const auto m = make_bell(outcome);
    CVector bob = CVector::Zero(2);
    for (int ap = 0; ap < 2; ++ap)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                bob(b) += std::conj(m.amplitudes(ap * 2 + a)) * full(ap * 4 + a * 2 + b);
    bob.normalize();
    return bob;
}

double overlap_up_to_phase(const CVector& a, const CVector& b) {
    return std::abs(a.dot(b));
}

}  // namespace

TEST_CASE("Bell states have the advertised amplitudes") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto psi_minus = make_bell(BellKind::PsiMinus);
    CHECK(std::abs(psi_minus.amplitudes(1) - Complex(r, 0)) < 1e-15);
    CHECK(std::abs(psi_minus.amplitudes(2) + Complex(r, 0)) < 1e-15);

    const auto phi_plus = make_bell(BellKind::PhiPlus);
    CHECK(std::abs(phi_plus.amplitudes(0) - Complex(r, 0)) < 1e-15);
    CHECK(std::abs(phi_plus.amplitudes(3) - Complex(r, 0)) < 1e-15);

    // Reduced state of every Bell pair is maximally mixed.
    for (auto kind : all_bell_kinds) {
        const auto red =
            partial_trace(DensityMatrix::from_pure(make_bell(kind)), 2, 2, Subsystem::A);
        CHECK((red.entries - maximally_mixed(2).entries).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("corrections are unitary and undo every branch") {
    for (auto shared : all_bell_kinds)
        for (auto outcome : all_bell_kinds) {
            const CMatrix u = correction_unitary(outcome, shared);
            CHECK((u * u.adjoint() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
        }

    // Branch maps match the brute-force expansion oracle on random inputs.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const auto chi = random_qubit(rng);
        for (auto shared : all_bell_kinds)
            for (auto outcome : all_bell_kinds) {
                const CVector oracle = expansion_oracle(chi, shared, outcome);
                const CVector predicted =
                    (branch_map(outcome, shared) * chi.amplitudes).normalized();
                CHECK(overlap_up_to_phase(oracle, predicted) ==
                      doctest::Approx(1.0).epsilon(1e-10));

                // And the correction takes the oracle branch back to chi.
                const CVector fixed = correction_unitary(outcome, shared) * oracle;
                CHECK(overlap_up_to_phase(fixed, chi.amplitudes) ==
                      doctest::Approx(1.0).epsilon(1e-10));
            }
    }
}

TEST_CASE("named corrections for a shared singlet") {
    // PsiMinus -> identity, PsiPlus -> phase flip, PhiMinus -> bit flip,
    // PhiPlus -> bit then phase flip (all up to global phase).
    const auto is_proportional = [](const CMatrix& a, const CMatrix& b) {
        Complex scale(0, 0);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (std::abs(b(r, c)) > 1e-12) scale = a(r, c) / b(r, c);
        return (a - scale * b).cwiseAbs().maxCoeff() < 1e-12 && std::abs(std::abs(scale) - 1.0) < 1e-12;
    };
    CMatrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    const CMatrix i = CMatrix::Identity(2, 2);

    CHECK(is_proportional(correction_unitary(BellKind::PsiMinus, BellKind::PsiMinus), i));
    CHECK(is_proportional(correction_unitary(BellKind::PsiPlus, BellKind::PsiMinus), z));
    CHECK(is_proportional(correction_unitary(BellKind::PhiMinus, BellKind::PsiMinus), x));
    CHECK(is_proportional(correction_unitary(BellKind::PhiPlus, BellKind::PsiMinus), z * x));
}

TEST_CASE("noiseless teleportation is exact for every shared kind and outcome") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 250; ++trial) {
        const auto chi = random_qubit(rng);
        for (auto shared : all_bell_kinds) {
            const auto out = teleport(chi, shared, rng());
            CHECK(out.fidelity_with_input == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    // A basis state teleports exactly under any sharing.
    const auto basis = PureState::qubit(1.0, 0.0);
    for (auto shared : all_bell_kinds) {
        const auto out = teleport(basis, shared, 7);
        CHECK(out.fidelity_with_input == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("outcome distribution is uniform and input-independent") {
    std::mt19937_64 seed_gen(55);
    const auto chi = random_qubit(seed_gen);

    const int trials = 40000;
    std::array<int, 4> histogram{};
    for (int t = 0; t < trials; ++t) {
        const auto out = teleport(chi, BellKind::PsiMinus, seed_gen());
        ++histogram[static_cast<std::size_t>(out.classical_bits)];
    }
    // 5 sigma binomial band around 1/4.
    const double sigma = std::sqrt(0.25 * 0.75 / trials);
    for (int k = 0; k < 4; ++k) {
        const double freq = static_cast<double>(histogram[static_cast<std::size_t>(k)]) / trials;
        CHECK(std::abs(freq - 0.25) < 5.0 * sigma);
    }
}

TEST_CASE("identical seeds replay identical outcome sequences") {
    std::mt19937_64 rng(31);
    const auto chi = random_qubit(rng);
    for (std::uint64_t seed : {1ull, 99ull, 123456789ull}) {
        const auto a = teleport(chi, BellKind::PhiPlus, seed);
        const auto b = teleport(chi, BellKind::PhiPlus, seed);
        CHECK(a.classical_bits == b.classical_bits);
        CHECK((a.bob_corrected.entries - b.bob_corrected.entries).cwiseAbs().maxCoeff() ==
              0.0);
    }
}

TEST_CASE("dephasing channel") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto diag = DensityMatrix::from_pure(PureState::qubit(r, r));

    CHECK((dephase(diag, 0.0).entries - diag.entries).cwiseAbs().maxCoeff() == 0.0);

    const auto dead = dephase(diag, 1.0);
    CHECK((dead.entries - maximally_mixed(2).entries).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fidelity(dead, diag) == doctest::Approx(0.5).epsilon(1e-10));

    // Entropy grows monotonically with p.
    double prev = -1.0;
    for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        const double s = von_neumann_entropy(dephase(diag, p));
        CHECK(s >= prev - 1e-12);
        prev = s;
    }
    CHECK_THROWS_AS(dephase(diag, 1.5), domain_error);
}

TEST_CASE("teleportation through a dephased pair degrades with p") {
    std::mt19937_64 rng(808);
    double prev_mean = 1.1;
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        double mean = 0.0;
        const int n = 400;
        std::mt19937_64 state_rng(1234);
        for (int t = 0; t < n; ++t) {
            const auto chi = random_qubit(state_rng);
            mean += teleport(chi, BellKind::PsiMinus, rng(), p).fidelity_with_input;
        }
        mean /= n;
        CHECK(mean < prev_mean);
        prev_mean = mean;
    }
}

TEST_CASE("spin decoherence from a momentum spread") {
    SUBCASE("delta spread keeps a pure state") {
        for (double phase : {0.0, 0.7, 2.4}) {
            const auto r = spin_decoherence(MomentumSpread::delta(phase));
            CHECK(r.polarization_loss == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(r.entropy_bits == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(von_neumann_entropy(r.rho_f) == doctest::Approx(0.0).epsilon(1e-9));
        }
    }

    SUBCASE("uniform phase over the circle is maximally mixed") {
        const auto r = spin_decoherence(MomentumSpread::uniform_circle(16));
        CHECK(r.polarization_loss == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.entropy_bits == doctest::Approx(1.0).epsilon(1e-9));
        CHECK((r.rho_f.entries - maximally_mixed(2).entries).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("gaussian spread matches the characteristic function and Monte Carlo") {
        const auto r = spin_decoherence(MomentumSpread::gaussian(0.0, 1.0));
        CHECK(std::abs(r.rho_f.entries(0, 0).real() - 0.5 * (1.0 + std::exp(-0.5))) < 1e-12);
        CHECK(r.polarization_loss == doctest::Approx(0.1967).epsilon(1e-3));
        CHECK(r.entropy_bits == doctest::Approx(0.716).epsilon(2e-3));

        // Monte Carlo oracle for <cos>, <sin> with a fixed seed.
        std::mt19937_64 rng(161803);
        std::normal_distribution<double> g(0.0, 1.0);
        double c = 0.0, s = 0.0;
        const int n = 4'000'000;
        for (int i = 0; i < n; ++i) {
            const double phi = g(rng);
            c += std::cos(phi);
            s += std::sin(phi);
        }
        c /= n;
        s /= n;
        const double p_mc = 0.5 * (1.0 - std::hypot(c, s));
        const double s_mc = -p_mc * std::log2(p_mc) - (1.0 - p_mc) * std::log2(1.0 - p_mc);
        CHECK(r.entropy_bits == doctest::Approx(s_mc).epsilon(1e-3));
    }

    SUBCASE("entropy equals the spectral entropy of rho_f") {
        for (double stddev : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            const auto r = spin_decoherence(MomentumSpread::gaussian(0.4, stddev));
            CHECK(r.entropy_bits ==
                  doctest::Approx(von_neumann_entropy(r.rho_f)).epsilon(1e-9));
        }
    }

    SUBCASE("weights must normalize") {
        CHECK_THROWS_AS(MomentumSpread::from_samples({{0.0, 0.5}, {1.0, 0.3}}), domain_error);
        CHECK_THROWS_AS(MomentumSpread::from_samples({{0.0, -0.2}, {1.0, 1.2}}), domain_error);
    }
}
