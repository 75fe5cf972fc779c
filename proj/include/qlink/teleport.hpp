#pragma once

// Single-qubit teleportation over a shared Bell pair, the dephasing noise
// channel, and the momentum-spread spin-decoherence model for massive
// carriers.
//
// Determinism contract: every randomized routine takes an explicit 64-bit
// seed driving a std::mt19937_64 whose raw outputs are mapped to uniforms
// via u = (x >> 11) * 2^-53. Identical seeds replay identical sequences on
// any platform (no std::uniform_real_distribution involved).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qlink/constants.hpp"
#include "qlink/errors.hpp"
#include "qlink/qstate.hpp"

namespace qlink {

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

inline std::string to_string(BellKind k) {
    switch (k) {
        case BellKind::PsiMinus: return "psi_minus";
        case BellKind::PsiPlus: return "psi_plus";
        case BellKind::PhiMinus: return "phi_minus";
        case BellKind::PhiPlus: return "phi_plus";
    }
    return "?";
}

inline constexpr std::array<BellKind, 4> all_bell_kinds{
    BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus};

/// The four Bell states in the {|++>, |+->, |-+>, |-->} product basis.
inline PureState make_bell(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(4);
    switch (kind) {
        case BellKind::PsiMinus: v(1) = r; v(2) = -r; break;
        case BellKind::PsiPlus: v(1) = r; v(2) = r; break;
        case BellKind::PhiMinus: v(0) = r; v(3) = -r; break;
        case BellKind::PhiPlus: v(0) = r; v(3) = r; break;
    }
    return PureState(std::move(v));
}

namespace detail {

inline CMatrix pauli_i() { return CMatrix::Identity(2, 2); }
inline CMatrix pauli_x() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline CMatrix pauli_z() {
    CMatrix m = CMatrix::Identity(2, 2);
    m(1, 1) = -1.0;
    return m;
}

/// Pauli labelling a Bell state through |B> = (I x P)|Phi+>.
inline CMatrix bell_pauli(BellKind k) {
    switch (k) {
        case BellKind::PhiPlus: return pauli_i();
        case BellKind::PhiMinus: return pauli_z();
        case BellKind::PsiPlus: return pauli_x();
        case BellKind::PsiMinus: return pauli_x() * pauli_z();
    }
    return pauli_i();
}

inline double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Bob's branch map: expanding |chi> x |shared> over Bell outcomes on
/// Alice's pair leaves Bob holding R chi with R = P_shared * P_outcome,
/// each branch carrying probability 1/4 regardless of chi.
inline CMatrix branch_map(BellKind outcome, BellKind shared) {
    return detail::bell_pauli(shared) * detail::bell_pauli(outcome);
}

/// The unitary Bob applies to his raw branch state to recover chi
/// (defined up to global phase).
inline CMatrix correction_unitary(BellKind outcome, BellKind shared) {
    return branch_map(outcome, shared).adjoint();
}

struct TeleportOutcome {
    BellKind outcome = BellKind::PsiMinus;
    int classical_bits = 0;  // 2-bit outcome index: PsiMinus..PhiPlus = 0..3
    DensityMatrix bob_raw;
    DensityMatrix bob_corrected;
    double fidelity_with_input = 0.0;
};

/// Dephasing channel: off-diagonals scaled by (1 - p).
inline DensityMatrix dephase(const DensityMatrix& rho, double p) {
    if (p < 0.0 || p > 1.0) throw domain_error("dephasing probability must be in [0, 1]");
    if (rho.dim() != 2) throw dimension_error("dephase expects a qubit state");
    CMatrix m = rho.entries;
    m(0, 1) *= (1.0 - p);
    m(1, 0) *= (1.0 - p);
    return DensityMatrix(std::move(m));
}

/// Teleport `chi` through a shared Bell pair whose Bob half passes a
/// dephasing channel of strength `dephase_p` before the protocol runs.
/// Alice's Bell measurement is sampled from the Born distribution with the
/// given seed; her copy of chi is consumed by the measurement, and the two
/// classical outcome bits reach Bob unchanged (the classical channel is
/// noiseless).
inline TeleportOutcome teleport(const PureState& chi, BellKind shared, std::uint64_t seed,
                                double dephase_p = 0.0) {
    if (chi.dim() != 2) throw dimension_error("teleport expects a single-qubit input");
    if (dephase_p < 0.0 || dephase_p > 1.0)
        throw domain_error("dephasing probability must be in [0, 1]");

    // Noise on Bob's half of the shared pair, in the 4-dim (A, B) space.
    const auto bell = make_bell(shared);
    CMatrix pair = bell.amplitudes * bell.amplitudes.adjoint();
    if (dephase_p > 0.0) {
        const double keep = 1.0 - dephase_p;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if ((r & 1) != (c & 1)) pair(r, c) *= keep;
    }

    // Full three-qubit state rho = |chi><chi| x pair, index = a'*4 + a*2 + b.
    CMatrix chi_rho = chi.amplitudes * chi.amplitudes.adjoint();
    CMatrix rho = CMatrix::Zero(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            rho(r, c) = chi_rho(r >> 2, c >> 2) * pair(r & 3, c & 3);

    // Born probabilities and Bob's conditional states for the four Bell
    // projectors on (A', A).
    std::array<double, 4> probs{};
    std::array<CMatrix, 4> conditional{};
    for (int k = 0; k < 4; ++k) {
        const auto m = make_bell(all_bell_kinds[static_cast<std::size_t>(k)]);
        // <m_{a'a}| rho |m_{c'c}> traced onto Bob's qubit.
        CMatrix bob = CMatrix::Zero(2, 2);
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) {
                const Complex w = std::conj(m.amplitudes(a)) * m.amplitudes(c);
                if (w == Complex(0.0, 0.0)) continue;
                for (int rb = 0; rb < 2; ++rb)
                    for (int cb = 0; cb < 2; ++cb)
                        bob(rb, cb) += w * rho(a * 2 + rb, c * 2 + cb);
            }
        probs[static_cast<std::size_t>(k)] = bob.trace().real();
        conditional[static_cast<std::size_t>(k)] = std::move(bob);
    }

    std::mt19937_64 rng(seed);
    const double u = detail::next_uniform(rng);
    int picked = 3;
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += probs[static_cast<std::size_t>(k)];
        if (u < acc) {
            picked = k;
            break;
        }
    }

    const auto idx = static_cast<std::size_t>(picked);
    TeleportOutcome out{all_bell_kinds[idx], picked, maximally_mixed(2), maximally_mixed(2), 0.0};
    const CMatrix raw = conditional[idx] / probs[idx];
    out.bob_raw = DensityMatrix(raw);
    const CMatrix corr = correction_unitary(out.outcome, shared);
    out.bob_corrected = DensityMatrix(corr * raw * corr.adjoint());
    out.fidelity_with_input = fidelity(out.bob_corrected, chi);
    return out;
}

/// Haar-uniform qubit from two uniforms: theta = acos(1 - 2u1), phi = 2 pi u2,
/// chi = (cos(theta/2), e^{i phi} sin(theta/2)).
inline PureState random_qubit(std::mt19937_64& rng) {
    const double u1 = detail::next_uniform(rng);
    const double u2 = detail::next_uniform(rng);
    const double theta = std::acos(1.0 - 2.0 * u1);
    const double phi = 2.0 * constants::pi * u2;
    return PureState::qubit(std::cos(theta / 2.0),
                            std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0));
}

// ---------------------------------------------------------------------------
// Spin decoherence of massive carriers under a spread of transport phases

/// Distribution of accumulated phase values.
struct MomentumSpread {
    enum class Kind { delta, gaussian, samples };
    Kind kind = Kind::delta;
    double phase = 0.0;              // delta
    double mean = 0.0, stddev = 0.0;  // gaussian
    std::vector<std::pair<double, double>> samples;  // (phase, weight)

    static MomentumSpread delta(double phase) {
        MomentumSpread s;
        s.kind = Kind::delta;
        s.phase = phase;
        return s;
    }
    static MomentumSpread gaussian(double mean, double stddev) {
        MomentumSpread s;
        s.kind = Kind::gaussian;
        s.mean = mean;
        s.stddev = stddev;
        return s;
    }
    static MomentumSpread from_samples(std::vector<std::pair<double, double>> samples) {
        MomentumSpread s;
        s.kind = Kind::samples;
        s.samples = std::move(samples);
        s.validate();
        return s;
    }
    /// N equally spaced phases over [0, 2pi) with equal weights.
    static MomentumSpread uniform_circle(int n = 16) {
        std::vector<std::pair<double, double>> ss;
        for (int i = 0; i < n; ++i)
            ss.emplace_back(2.0 * constants::pi * i / n, 1.0 / n);
        return from_samples(std::move(ss));
    }

    void validate() const {
        if (kind != Kind::samples) return;
        double total = 0.0;
        for (const auto& [phase_i, w] : samples) {
            (void)phase_i;
            if (w < 0.0) throw domain_error("sample weights must be non-negative");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw domain_error("sample weights must sum to 1 (got " + std::to_string(total) + ")");
    }

    /// <e^{i phase}> under the distribution.
    Complex characteristic() const {
        switch (kind) {
            case Kind::delta: return std::exp(Complex(0.0, phase));
            case Kind::gaussian:
                return std::exp(Complex(-0.5 * stddev * stddev, 0.0)) * std::exp(Complex(0.0, mean));
            case Kind::samples: {
                Complex acc(0.0, 0.0);
                for (const auto& [p, w] : samples) acc += w * std::exp(Complex(0.0, p));
                return acc;
            }
        }
        return {1.0, 0.0};
    }
};

struct SpinDecoherenceResult {
    DensityMatrix rho_f;
    double polarization_loss = 0.0;  // P = (1 - |<e^{i phase}>|) / 2
    double entropy_bits = 0.0;       // binary entropy of P
};

/// rho_f = 1/2 [[1 + <cos>, <sin>], [<sin>, 1 - <cos>]] and its entropy
/// S = -P log2 P - (1-P) log2 (1-P) with P = (1 - |<e^{i phase}>|) / 2.
inline SpinDecoherenceResult spin_decoherence(const MomentumSpread& spread) {
    spread.validate();
    const Complex ch = spread.characteristic();
    const double avg_cos = ch.real();
    const double avg_sin = ch.imag();

    CMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + avg_cos);
    m(0, 1) = 0.5 * avg_sin;
    m(1, 0) = 0.5 * avg_sin;
    m(1, 1) = 0.5 * (1.0 - avg_cos);

    const double p = 0.5 * (1.0 - std::abs(ch));
    double s = 0.0;
    if (p > 0.0 && p < 1.0)
        s = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    return {DensityMatrix(std::move(m)), p, s};
}

}  // namespace qlink
