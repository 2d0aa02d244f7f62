#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dclc/boolfn.hpp"

// Two-qubit protocols for two-bit dual-layer tasks: local Pauli encodings of
// a shared maximally entangled pair, Bell-basis decoding, the blockwise
// extension to n-bit strings, and the Gram-matrix bipartition analysis that
// rules out perfect decoding for unbalanced inner functions.

namespace dclc::quantum {

using Complex = std::complex<double>;
using Vec4 = std::array<Complex, 4>;   // amplitudes on |00>,|01>,|10>,|11>
using Mat2 = std::array<Complex, 4>;   // row-major 2x2
using Mat4 = std::array<Complex, 16>;  // row-major 4x4

struct ProtocolOrderError : std::logic_error {
    using std::logic_error::logic_error;
};
struct UnsupportedProtocolError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidMeasurementError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ===== Single-qubit operators =====

Mat2 identity2();
Mat2 pauli_x();
Mat2 pauli_z();
Mat2 pauli_xz();  // X * Z

// Abstract operator list used by the bipartition analysis; order matters for
// the phase-class identity (index i pairs with 3 - i).
const std::array<Mat2, 4>& sigma_list();  // {I, X, XZ, Z}

// Dense-coding convention: the first bit selects the Z power, the second the
// X power, so differing first bits flip the phase label and differing second
// bits flip the parity label of the shared pair.
Mat2 pauli_for_bits(int b1, int b2);  // X^{b2} * Z^{b1}

// ===== States and measurements =====

Vec4 phi_plus();
Vec4 phi_minus();
Vec4 psi_plus();
Vec4 psi_minus();

// (A x B) applied to a two-qubit state; throws if the input is not normalized.
Vec4 apply_encoding(const Vec4& state, const Mat2& op_a, const Mat2& op_b);

Complex inner_product(const Vec4& bra, const Vec4& ket);
double norm(const Vec4& v);

struct Measurement {
    std::vector<Mat4> effects;
};

// Effects must be Hermitian, positive semidefinite and sum to the identity
// within tolerance; otherwise InvalidMeasurementError.
void validate_measurement(const Measurement& m, double tol = 1e-9);

// Born probabilities; validates the measurement first.
std::vector<double> measure(const Vec4& state, const Measurement& m);

Measurement bell_basis_measurement();      // four projectors, Bell order
Measurement phi_plus_binary_measurement(); // {P_phi+, I - P_phi+}

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
const char* bell_label_name(BellLabel label);

// Label of (pauli(x) x pauli(y)) |phi+>; deterministic for Pauli encodings.
BellLabel bell_label_for_inputs(std::uint32_t x, std::uint32_t y);

// ===== Perfect protocols for balanced inner functions =====

// One row of the published protocol table for n = 2: the pair of outer
// functions served (one per inner choice), Bob's relabeling flags and the
// output bit assigned to the phi+ outcome.
struct BalancedProtocolRow {
    boolfn::BooleanFunction outer_for_xnor;
    boolfn::BooleanFunction outer_for_xor;
    int flip_y1 = 0;  // Bob encodes (y1 ^ flip_y1, y2 ^ flip_y2)
    int flip_y2 = 0;
    int phi_plus_output = 0;
};

const std::vector<BalancedProtocolRow>& balanced_protocol_rows();

// Derived protocol parameters for a nontrivial task with f in {XOR, XNOR}.
struct BalancedProtocol {
    int flip_y1 = 0;
    int flip_y2 = 0;
    int phi_plus_output = 0;
};

// Throws UnsupportedProtocolError if the task is not covered (f must be XOR
// or XNOR and F must have exactly one minterm or one maxterm).
BalancedProtocol derive_balanced_protocol(const boolfn::DualLayerTask& task);

// Runs the protocol on one input pair with exact Born statistics.
// Outcome probabilities are 0/1 up to 1e-12 by construction.
int run_balanced_protocol(const boolfn::DualLayerTask& task, std::uint32_t x,
                          std::uint32_t y);

// Probability that the protocol answers correctly on (x, y).
double balanced_protocol_success(const boolfn::DualLayerTask& task,
                                 std::uint32_t x, std::uint32_t y);

// ===== Oblivious runs: messages first, outer function later =====

class ObliviousRun {
public:
    // n = 2; inner must be XOR or XNOR.
    explicit ObliviousRun(boolfn::BooleanFunction inner);

    // Encodes both inputs and performs the Bell measurement.
    BellLabel encode_and_measure(std::uint32_t x, std::uint32_t y);

    // Deducts (z1, z2) from the Bell label and applies the outer function.
    // ProtocolOrderError unless encode_and_measure already ran.
    int finalize(const boolfn::BooleanFunction& outer);

    bool measured() const { return measured_; }
    const std::array<int, 2>& inner_values() const;

private:
    boolfn::BooleanFunction inner_;
    bool measured_ = false;
    std::array<int, 2> z_{0, 0};
};

// ===== Blockwise protocol for n-bit strings =====

struct BlockwiseResult {
    int output = 0;
    int qubits_per_party = 0;     // always ceil(n/2)
    int bell_pairs = 0;           // floor(n/2)
    int unentangled_qubits = 0;   // 1 if n odd else 0, per party
};

// f must be balanced (XOR, XNOR or a single-bit function); otherwise
// UnsupportedProtocolError.  Exact for every input pair.
BlockwiseResult run_blockwise_protocol(const boolfn::DualLayerTask& task,
                                       std::uint32_t x, std::uint32_t y);

// ===== Bipartition analysis of the 16 encoded states =====

struct BipartitionReport {
    bool degenerate = false;                   // product seed state
    std::set<std::pair<int, int>> ratios;      // (smaller, larger), both > 0
    int distinct_states = 0;                   // phase classes among the 16
};

// Builds (sigma_i x sigma_j)(a|00> + b|11>) for the 4 x 4 operator pairs,
// collapses phase-equal states, and enumerates every bipartition of the
// classes whose two sides are exactly orthogonal (cross-Gram < 1e-10).
// Requires |a|^2 + |b|^2 = 1 within 1e-9.
BipartitionReport orthogonal_bipartition_ratios(Complex a, Complex b);

// ===== Randomized falsification search (unbalanced inner functions) =====

struct FalsificationResult {
    double best_success = 0.0;
    std::uint64_t samples = 0;
    double best_a = 0.0;
    double best_b = 0.0;
};

// Samples seed states from a 50-point (a,b) grid and Haar-random local
// unitaries (4 per party), decoding with two-outcome projectors onto spans of
// the target-0 / target-1 encoded-state subsets.  Deterministic per seed.
FalsificationResult falsification_search(const boolfn::DualLayerTask& task,
                                         std::uint64_t seed,
                                         std::uint64_t samples);

// ===== Whole-characterization report =====

struct TaskCharacterization {
    boolfn::DualLayerTask task;
    bool inner_balanced = false;
    bool protocol_exact = false;        // balanced case: all 16 inputs correct
    std::pair<int, int> ratio{0, 0};
    bool ratio_excluded = false;        // unbalanced case: not 4:12/12:4/8:8
    double best_falsification = 0.0;    // unbalanced case
};

struct CharacterizationReport {
    std::vector<TaskCharacterization> tasks;
    bool all_pass = false;
};

// Covers every nontrivial two-bit task: perfect protocols when f is balanced,
// ratio exclusion plus randomized search otherwise.
CharacterizationReport verify_quantum_characterization(
    std::uint64_t search_samples_per_task, std::uint64_t seed);

}  // namespace dclc::quantum
