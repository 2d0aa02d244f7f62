#include "dclc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dclc/rng.hpp"

namespace dclc::quantum {

namespace {

constexpr double kDeterministicTol = 1e-12;
constexpr double kPhaseClassTol = 1e-10;
constexpr double kNormTol = 1e-9;

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out[2 * r + c] =
                a[2 * r + 0] * b[0 + c] + a[2 * r + 1] * b[2 + c];
        }
    }
    return out;
}

Vec4 mat4_apply(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int r = 0; r < 4; ++r) {
        Complex acc{0.0, 0.0};
        for (int c = 0; c < 4; ++c) acc += m[4 * r + c] * v[c];
        out[r] = acc;
    }
    return out;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int ar = 0; ar < 2; ++ar)
        for (int ac = 0; ac < 2; ++ac)
            for (int br = 0; br < 2; ++br)
                for (int bc = 0; bc < 2; ++bc)
                    out[4 * (2 * ar + br) + (2 * ac + bc)] =
                        a[2 * ar + ac] * b[2 * br + bc];
    return out;
}

Mat4 projector(const Vec4& v) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[4 * r + c] = v[r] * std::conj(v[c]);
    return out;
}

// Determinant of the principal submatrix of a 4x4 Hermitian matrix selected
// by `rows` (Gaussian elimination with partial pivoting).
double principal_minor(const Mat4& m, const std::vector<int>& rows) {
    const int k = static_cast<int>(rows.size());
    std::array<std::array<Complex, 4>, 4> a{};
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) a[r][c] = m[4 * rows[r] + rows[c]];
    Complex det{1.0, 0.0};
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300) return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < k; ++r) {
            const Complex factor = a[r][col] / a[col][col];
            for (int c = col; c < k; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det.real();
}

// Component-wise differences carried by each label: the first drives the
// phase bit, the second the parity bit.
std::pair<int, int> diffs_for_label(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return {0, 0};
        case BellLabel::PhiMinus: return {1, 0};
        case BellLabel::PsiPlus: return {0, 1};
        case BellLabel::PsiMinus: return {1, 1};
    }
    throw std::logic_error("unreachable Bell label");
}

int deterministic_outcome(const std::vector<double>& probs) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 1.0 - kDeterministicTol) return static_cast<int>(i);
    }
    throw std::logic_error("expected a deterministic measurement outcome");
}

// How a two-argument inner function consumes its arguments: some depend on
// the XOR of both bits, the balanced single-bit ones on one side only.
struct InnerShape {
    bool uses_x = false;
    bool uses_y = false;
    int flip = 0;  // z = (effective_x ^ effective_y) ^ flip
};

InnerShape inner_shape(const boolfn::BooleanFunction& inner) {
    const std::string t = inner.to_string();
    if (t == "0110") return {true, true, 0};   // XOR
    if (t == "1001") return {true, true, 1};   // XNOR
    if (t == "0011") return {true, false, 0};  // first argument
    if (t == "1100") return {true, false, 1};  // negated first argument
    if (t == "0101") return {false, true, 0};  // second argument
    if (t == "1010") return {false, true, 1};  // negated second argument
    throw UnsupportedProtocolError(
        "blockwise protocol requires a balanced inner function");
}

int bit_of(std::uint32_t value, int position, int width) {
    return static_cast<int>((value >> (width - 1 - position)) & 1u);
}

// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt).
std::vector<Vec4> orthonormal_span(const std::vector<Vec4>& vectors) {
    std::vector<Vec4> basis;
    for (Vec4 v : vectors) {
        for (const Vec4& e : basis) {
            const Complex overlap = inner_product(e, v);
            for (int i = 0; i < 4; ++i) v[i] -= overlap * e[i];
        }
        const double residual = norm(v);
        if (residual > 1e-9) {
            for (int i = 0; i < 4; ++i) v[i] /= residual;
            basis.push_back(v);
        }
    }
    return basis;
}

double span_overlap(const std::vector<Vec4>& basis, const Vec4& v) {
    double total = 0.0;
    for (const Vec4& e : basis) total += std::norm(inner_product(e, v));
    return total;
}

Mat2 haar_unitary(rng::CounterRng& gen) {
    std::array<Complex, 4> g{};
    for (auto& z : g) {
        z = Complex(gen.next_gaussian(), gen.next_gaussian()) /
            std::sqrt(2.0);
    }
    // Gram-Schmidt of a Ginibre matrix with real positive normalization
    // yields a Haar-distributed unitary.
    Complex c00 = g[0], c10 = g[2];
    const double n0 = std::sqrt(std::norm(c00) + std::norm(c10));
    c00 /= n0;
    c10 /= n0;
    Complex c01 = g[1], c11 = g[3];
    const Complex overlap = std::conj(c00) * c01 + std::conj(c10) * c11;
    c01 -= overlap * c00;
    c11 -= overlap * c10;
    const double n1 = std::sqrt(std::norm(c01) + std::norm(c11));
    c01 /= n1;
    c11 /= n1;
    return Mat2{c00, c01, c10, c11};
}

}  // namespace

Mat2 identity2() { return Mat2{{{1, 0}, {0, 0}, {0, 0}, {1, 0}}}; }
Mat2 pauli_x() { return Mat2{{{0, 0}, {1, 0}, {1, 0}, {0, 0}}}; }
Mat2 pauli_z() { return Mat2{{{1, 0}, {0, 0}, {0, 0}, {-1, 0}}}; }
Mat2 pauli_xz() { return mat2_mul(pauli_x(), pauli_z()); }

const std::array<Mat2, 4>& sigma_list() {
    static const std::array<Mat2, 4> list{identity2(), pauli_x(), pauli_xz(),
                                          pauli_z()};
    return list;
}

Mat2 pauli_for_bits(int b1, int b2) {
    Mat2 op = identity2();
    if (b2) op = mat2_mul(op, pauli_x());
    if (b1) op = mat2_mul(op, pauli_z());
    return op;
}

Vec4 phi_plus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return Vec4{{{s, 0}, {0, 0}, {0, 0}, {s, 0}}};
}
Vec4 phi_minus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return Vec4{{{s, 0}, {0, 0}, {0, 0}, {-s, 0}}};
}
Vec4 psi_plus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return Vec4{{{0, 0}, {s, 0}, {s, 0}, {0, 0}}};
}
Vec4 psi_minus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return Vec4{{{0, 0}, {s, 0}, {-s, 0}, {0, 0}}};
}

Vec4 apply_encoding(const Vec4& state, const Mat2& op_a, const Mat2& op_b) {
    if (std::abs(norm(state) - 1.0) > kNormTol) {
        throw std::invalid_argument("encoding applied to unnormalized state");
    }
    return mat4_apply(kron(op_a, op_b), state);
}

Complex inner_product(const Vec4& bra, const Vec4& ket) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i < 4; ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

double norm(const Vec4& v) {
    double acc = 0.0;
    for (const Complex& c : v) acc += std::norm(c);
    return std::sqrt(acc);
}

void validate_measurement(const Measurement& m, double tol) {
    if (m.effects.empty()) {
        throw InvalidMeasurementError("measurement has no effects");
    }
    Mat4 sum{};
    for (const Mat4& e : m.effects) {
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (std::abs(e[4 * r + c] - std::conj(e[4 * c + r])) > tol) {
                    throw InvalidMeasurementError("effect is not Hermitian");
                }
                sum[4 * r + c] += e[4 * r + c];
            }
        }
        // A Hermitian matrix is positive semidefinite exactly when every
        // principal minor is nonnegative.
        for (int mask = 1; mask < 16; ++mask) {
            std::vector<int> rows;
            for (int i = 0; i < 4; ++i)
                if (mask & (1 << i)) rows.push_back(i);
            if (principal_minor(e, rows) < -tol) {
                throw InvalidMeasurementError(
                    "effect is not positive semidefinite");
            }
        }
    }
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const Complex expect = (r == c) ? Complex{1.0, 0.0}
                                            : Complex{0.0, 0.0};
            if (std::abs(sum[4 * r + c] - expect) > tol) {
                throw InvalidMeasurementError(
                    "effects do not sum to the identity");
            }
        }
    }
}

std::vector<double> measure(const Vec4& state, const Measurement& m) {
    validate_measurement(m);
    std::vector<double> probs;
    probs.reserve(m.effects.size());
    for (const Mat4& e : m.effects) {
        const Vec4 ev = mat4_apply(e, state);
        probs.push_back(inner_product(state, ev).real());
    }
    return probs;
}

Measurement bell_basis_measurement() {
    Measurement m;
    m.effects = {projector(phi_plus()), projector(phi_minus()),
                 projector(psi_plus()), projector(psi_minus())};
    return m;
}

Measurement phi_plus_binary_measurement() {
    Mat4 p = projector(phi_plus());
    Mat4 rest{};
    for (int i = 0; i < 4; ++i) rest[4 * i + i] = Complex{1.0, 0.0};
    for (int i = 0; i < 16; ++i) rest[i] -= p[i];
    Measurement m;
    m.effects = {p, rest};
    return m;
}

const char* bell_label_name(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "phi+";
        case BellLabel::PhiMinus: return "phi-";
        case BellLabel::PsiPlus: return "psi+";
        case BellLabel::PsiMinus: return "psi-";
    }
    return "?";
}

BellLabel bell_label_for_inputs(std::uint32_t x, std::uint32_t y) {
    if (x > 3 || y > 3) {
        throw std::invalid_argument("inputs must be two-bit values");
    }
    const Mat2 op_a = pauli_for_bits(bit_of(x, 0, 2), bit_of(x, 1, 2));
    const Mat2 op_b = pauli_for_bits(bit_of(y, 0, 2), bit_of(y, 1, 2));
    const Vec4 state = apply_encoding(phi_plus(), op_a, op_b);
    const int outcome =
        deterministic_outcome(measure(state, bell_basis_measurement()));
    return static_cast<BellLabel>(outcome);
}

const std::vector<BalancedProtocolRow>& balanced_protocol_rows() {
    using boolfn::BooleanFunction;
    static const std::vector<BalancedProtocolRow> rows = [] {
        auto fn = [](const char* bits) {
            return BooleanFunction::from_string(2, bits);
        };
        std::vector<BalancedProtocolRow> r;
        r.push_back({fn("1110"), fn("0111"), 0, 0, 0});
        r.push_back({fn("0001"), fn("1000"), 0, 0, 1});
        r.push_back({fn("1000"), fn("0001"), 1, 1, 1});
        r.push_back({fn("0111"), fn("1110"), 1, 1, 0});
        r.push_back({fn("0100"), fn("0010"), 1, 0, 1});
        r.push_back({fn("1011"), fn("1101"), 1, 0, 0});
        r.push_back({fn("0010"), fn("0100"), 0, 1, 1});
        r.push_back({fn("1101"), fn("1011"), 0, 1, 0});
        return r;
    }();
    return rows;
}

BalancedProtocol derive_balanced_protocol(const boolfn::DualLayerTask& task) {
    if (task.n != 2) {
        throw UnsupportedProtocolError(
            "pair protocol is defined for two-bit inputs");
    }
    const std::string inner = task.inner.to_string();
    bool inner_is_xor;
    if (inner == "0110") {
        inner_is_xor = true;
    } else if (inner == "1001") {
        inner_is_xor = false;
    } else {
        throw UnsupportedProtocolError(
            "pair protocol requires an XOR-type inner function");
    }

    const auto& table = task.outer.table();
    int ones = 0;
    for (auto v : table) ones += v;
    int star_index;
    int phi_plus_output;
    if (ones == 1) {
        star_index = static_cast<int>(
            std::find(table.begin(), table.end(), 1) - table.begin());
        phi_plus_output = 1;
    } else if (ones == 3) {
        star_index = static_cast<int>(
            std::find(table.begin(), table.end(), 0) - table.begin());
        phi_plus_output = 0;
    } else {
        throw UnsupportedProtocolError(
            "pair protocol requires an outer function with a unique "
            "minterm or maxterm");
    }

    const int z1 = (star_index >> 1) & 1;
    const int z2 = star_index & 1;
    BalancedProtocol p;
    p.flip_y1 = inner_is_xor ? z1 : 1 - z1;
    p.flip_y2 = inner_is_xor ? z2 : 1 - z2;
    p.phi_plus_output = phi_plus_output;
    return p;
}

namespace {

std::vector<double> balanced_protocol_click(std::uint32_t x, std::uint32_t y,
                                            const BalancedProtocol& p) {
    const Mat2 op_a = pauli_for_bits(bit_of(x, 0, 2), bit_of(x, 1, 2));
    const Mat2 op_b = pauli_for_bits(bit_of(y, 0, 2) ^ p.flip_y1,
                                     bit_of(y, 1, 2) ^ p.flip_y2);
    const Vec4 state = apply_encoding(phi_plus(), op_a, op_b);
    return measure(state, phi_plus_binary_measurement());
}

}  // namespace

int run_balanced_protocol(const boolfn::DualLayerTask& task, std::uint32_t x,
                          std::uint32_t y) {
    const BalancedProtocol p = derive_balanced_protocol(task);
    const auto probs = balanced_protocol_click(x, y, p);
    const int outcome = deterministic_outcome(probs);
    return outcome == 0 ? p.phi_plus_output : 1 - p.phi_plus_output;
}

double balanced_protocol_success(const boolfn::DualLayerTask& task,
                                 std::uint32_t x, std::uint32_t y) {
    const BalancedProtocol p = derive_balanced_protocol(task);
    const auto probs = balanced_protocol_click(x, y, p);
    const int truth = boolfn::evaluate_task(task, x, y);
    double success = 0.0;
    if (p.phi_plus_output == truth) success += probs[0];
    if (1 - p.phi_plus_output == truth) success += probs[1];
    return success;
}

ObliviousRun::ObliviousRun(boolfn::BooleanFunction inner)
    : inner_(std::move(inner)) {
    const std::string t = inner_.to_string();
    if (t != "0110" && t != "1001") {
        throw UnsupportedProtocolError(
            "oblivious runs require an XOR-type inner function");
    }
}

BellLabel ObliviousRun::encode_and_measure(std::uint32_t x, std::uint32_t y) {
    const BellLabel label = bell_label_for_inputs(x, y);
    const auto [d1, d2] = diffs_for_label(label);
    const int flip = inner_.to_string() == "1001" ? 1 : 0;
    z_ = {d1 ^ flip, d2 ^ flip};
    measured_ = true;
    return label;
}

int ObliviousRun::finalize(const boolfn::BooleanFunction& outer) {
    if (!measured_) {
        throw ProtocolOrderError(
            "outer function applied before any message was measured");
    }
    if (outer.arity() != 2) {
        throw std::invalid_argument("outer function must take two arguments");
    }
    return outer.evaluate_index(
        static_cast<std::uint32_t>((z_[0] << 1) | z_[1]));
}

const std::array<int, 2>& ObliviousRun::inner_values() const {
    if (!measured_) {
        throw ProtocolOrderError(
            "inner values requested before any message was measured");
    }
    return z_;
}

BlockwiseResult run_blockwise_protocol(const boolfn::DualLayerTask& task,
                                       std::uint32_t x, std::uint32_t y) {
    const int n = task.n;
    const InnerShape shape = inner_shape(task.inner);
    const std::uint32_t limit = (n >= 32) ? 0xffffffffu
                                          : ((1u << n) - 1u);
    if (x > limit || y > limit) {
        throw std::invalid_argument("input exceeds the task width");
    }

    std::vector<int> diffs(n, 0);
    const Measurement bell = bell_basis_measurement();

    // Paired positions share one maximally entangled pair via dense coding;
    // a party whose bit is ignored by the inner function encodes zeros.
    for (int block = 0; block + 1 < n; block += 2) {
        const int a1 = shape.uses_x ? bit_of(x, block, n) : 0;
        const int a2 = shape.uses_x ? bit_of(x, block + 1, n) : 0;
        const int b1 = shape.uses_y ? bit_of(y, block, n) : 0;
        const int b2 = shape.uses_y ? bit_of(y, block + 1, n) : 0;
        const Vec4 state = apply_encoding(phi_plus(), pauli_for_bits(a1, a2),
                                          pauli_for_bits(b1, b2));
        const int outcome = deterministic_outcome(measure(state, bell));
        const auto [d1, d2] = diffs_for_label(static_cast<BellLabel>(outcome));
        diffs[block] = d1;
        diffs[block + 1] = d2;
    }

    // An odd final position travels as one computational-basis qubit from
    // each party; the joint computational measurement is deterministic.
    if (n % 2 == 1) {
        const int last = n - 1;
        const int a = shape.uses_x ? bit_of(x, last, n) : 0;
        const int b = shape.uses_y ? bit_of(y, last, n) : 0;
        Vec4 state{};
        state[2 * a + b] = Complex{1.0, 0.0};
        Measurement computational;
        for (int k = 0; k < 4; ++k) {
            Vec4 basis{};
            basis[k] = Complex{1.0, 0.0};
            computational.effects.push_back(projector(basis));
        }
        const int outcome =
            deterministic_outcome(measure(state, computational));
        diffs[last] = ((outcome >> 1) & 1) ^ (outcome & 1);
    }

    std::uint32_t z = 0;
    for (int i = 0; i < n; ++i) {
        z = (z << 1) | static_cast<std::uint32_t>(diffs[i] ^ shape.flip);
    }

    BlockwiseResult result;
    result.output = task.outer.evaluate_index(z);
    result.qubits_per_party = (n + 1) / 2;
    result.bell_pairs = n / 2;
    result.unentangled_qubits = n % 2;
    return result;
}

BipartitionReport orthogonal_bipartition_ratios(Complex a, Complex b) {
    const double total = std::norm(a) + std::norm(b);
    if (std::abs(total - 1.0) > kNormTol) {
        throw std::invalid_argument("seed amplitudes must be normalized");
    }

    BipartitionReport report;
    report.degenerate = std::abs(a) < kNormTol || std::abs(b) < kNormTol;

    const Vec4 seed{a, Complex{0, 0}, Complex{0, 0}, b};
    std::vector<Vec4> states;
    states.reserve(16);
    for (const Mat2& sa : sigma_list()) {
        for (const Mat2& sb : sigma_list()) {
            states.push_back(mat4_apply(kron(sa, sb), seed));
        }
    }

    // Collapse states that are equal up to a global phase; all Gram data is
    // preserved by one representative per class.
    std::vector<int> class_rep;
    std::vector<int> class_weight;
    std::vector<int> state_class(16, -1);
    for (int s = 0; s < 16; ++s) {
        for (std::size_t c = 0; c < class_rep.size(); ++c) {
            const double overlap =
                std::abs(inner_product(states[class_rep[c]], states[s]));
            if (overlap > 1.0 - kPhaseClassTol) {
                state_class[s] = static_cast<int>(c);
                ++class_weight[c];
                break;
            }
        }
        if (state_class[s] < 0) {
            state_class[s] = static_cast<int>(class_rep.size());
            class_rep.push_back(s);
            class_weight.push_back(1);
        }
    }

    const int k = static_cast<int>(class_rep.size());
    report.distinct_states = k;

    std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            gram[i][j] = std::abs(
                inner_product(states[class_rep[i]], states[class_rep[j]]));
        }
    }

    // Every split of the phase classes whose sides are mutually orthogonal;
    // class 0 is pinned to one side to skip mirrored masks.
    for (std::uint32_t mask = 1; mask < (1u << k); mask += 2) {
        if (mask == (1u << k) - 1u) continue;
        bool orthogonal = true;
        int weight_a = 0;
        for (int i = 0; i < k && orthogonal; ++i) {
            if (!(mask & (1u << i))) continue;
            weight_a += class_weight[i];
            for (int j = 0; j < k; ++j) {
                if (mask & (1u << j)) continue;
                if (gram[i][j] >= kPhaseClassTol) {
                    orthogonal = false;
                    break;
                }
            }
        }
        if (orthogonal) {
            const int weight_b = 16 - weight_a;
            report.ratios.insert({std::min(weight_a, weight_b),
                                  std::max(weight_a, weight_b)});
        }
    }
    return report;
}

FalsificationResult falsification_search(const boolfn::DualLayerTask& task,
                                         std::uint64_t seed,
                                         std::uint64_t samples) {
    if (task.n != 2) {
        throw std::invalid_argument(
            "falsification search is defined for two-bit tasks");
    }
    constexpr int kGridPoints = 50;
    constexpr int kDrawsPerPoint = 200;

    FalsificationResult result;
    result.samples = samples;

    std::vector<int> targets(16, 0);
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t y = 0; y < 4; ++y)
            targets[4 * x + y] = boolfn::evaluate_task(task, x, y);

    for (std::uint64_t t = 0; t < samples; ++t) {
        rng::CounterRng gen = rng::CounterRng::for_stream(seed, t);
        const int grid_index =
            static_cast<int>((t / kDrawsPerPoint) % kGridPoints);
        const double theta = (grid_index + 1) * std::numbers::pi /
                             (2.0 * (kGridPoints + 1));
        const double a = std::cos(theta);
        const double b = std::sin(theta);
        const Vec4 shared{Complex{a, 0}, Complex{0, 0}, Complex{0, 0},
                          Complex{b, 0}};

        std::array<Mat2, 4> ops_a{};
        std::array<Mat2, 4> ops_b{};
        for (int i = 0; i < 4; ++i) ops_a[i] = haar_unitary(gen);
        for (int i = 0; i < 4; ++i) ops_b[i] = haar_unitary(gen);

        std::array<Vec4, 16> encoded{};
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                encoded[4 * x + y] =
                    mat4_apply(kron(ops_a[x], ops_b[y]), shared);

        // Two candidate decoders: project onto the span of the target-1
        // states (click means answer 1) or of the target-0 states (click
        // means answer 0).
        for (int side = 0; side < 2; ++side) {
            std::vector<Vec4> members;
            for (int i = 0; i < 16; ++i) {
                if (targets[i] == (side == 0 ? 1 : 0)) {
                    members.push_back(encoded[i]);
                }
            }
            const std::vector<Vec4> basis = orthonormal_span(members);
            double success = 0.0;
            for (int i = 0; i < 16; ++i) {
                const double click = span_overlap(basis, encoded[i]);
                const int click_answer = side == 0 ? 1 : 0;
                success += (targets[i] == click_answer)
                               ? click
                               : 1.0 - click;
            }
            success /= 16.0;
            if (success > result.best_success) {
                result.best_success = success;
                result.best_a = a;
                result.best_b = b;
            }
        }
    }
    return result;
}

CharacterizationReport verify_quantum_characterization(
    std::uint64_t search_samples_per_task, std::uint64_t seed) {
    CharacterizationReport report;
    report.all_pass = true;

    static const std::set<std::pair<int, int>> kForbiddenRatios{
        {4, 12}, {12, 4}, {8, 8}};

    std::uint64_t stream = 0;
    for (const boolfn::DualLayerTask& task : boolfn::all_two_bit_tasks()) {
        if (boolfn::matches_triviality_criteria(task)) continue;
        TaskCharacterization entry;
        entry.task = task;
        entry.inner_balanced = task.inner.is_balanced();
        entry.ratio = boolfn::output_ratio(task);

        if (entry.inner_balanced) {
            entry.protocol_exact = true;
            for (std::uint32_t x = 0; x < 4 && entry.protocol_exact; ++x) {
                for (std::uint32_t y = 0; y < 4; ++y) {
                    if (run_balanced_protocol(task, x, y) !=
                        boolfn::evaluate_task(task, x, y)) {
                        entry.protocol_exact = false;
                        break;
                    }
                }
            }
            if (!entry.protocol_exact) report.all_pass = false;
        } else {
            entry.ratio_excluded = kForbiddenRatios.count(entry.ratio) == 0;
            const FalsificationResult search = falsification_search(
                task, rng::mix64(seed + stream), search_samples_per_task);
            entry.best_falsification = search.best_success;
            if (!entry.ratio_excluded ||
                entry.best_falsification > 1.0 - 1e-3) {
                report.all_pass = false;
            }
        }
        ++stream;
        report.tasks.push_back(std::move(entry));
    }
    return report;
}

}  // namespace dclc::quantum
