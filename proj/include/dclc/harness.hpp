#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dclc/boolfn.hpp"
#include "dclc/polygon.hpp"
#include "dclc/rng.hpp"

// Simulation harness: backends as black-box strategy objects, seeded trial
// loops with order-independent per-trial streams, transcript digests, and
// JSON/CSV report emission.

namespace dclc::harness {

// Raised when a run requests a mode the backend cannot provide, e.g. a
// deferred-finalization run on a backend whose messages depend on the outer
// function.
struct UnsupportedModeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BackendKind { Classical, Quantum, Polygon };

const char* backend_kind_name(BackendKind kind);
// Accepts "classical", "quantum", "polygon"; throws std::invalid_argument.
BackendKind parse_backend_kind(const std::string& name);

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    // Classical labels of the party messages (or of the deterministic local
    // operations that stand in for them); each fits the one-system channel
    // budget of operational dimension <= 2^(n-1).
    std::uint32_t alice_message = 0;
    std::uint32_t bob_message = 0;
    int output = 0;
    bool success = false;
};

// Strategy object: exact per-input success probability plus trial sampling.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string name() const = 0;
    virtual int n() const = 0;
    virtual double success_probability(std::uint32_t x,
                                       std::uint32_t y) const = 0;
    virtual TrialRecord sample(std::uint32_t x, std::uint32_t y,
                               rng::CounterRng& rng) const = 0;
    // Deferred finalization: messages first, outer function revealed after.
    virtual bool supports_oblivious() const { return false; }
    virtual TrialRecord sample_oblivious(std::uint32_t x, std::uint32_t y,
                                         rng::CounterRng& rng) const;
};

std::unique_ptr<Backend> make_classical_backend(
    const boolfn::DualLayerTask& task);
std::unique_ptr<Backend> make_quantum_backend(
    const boolfn::DualLayerTask& task);
std::unique_ptr<Backend> make_polygon_backend(const boolfn::DualLayerTask& task,
                                              int polygon_n,
                                              polygon::Composition comp);

struct ProtocolRun {
    boolfn::DualLayerTask task;
    BackendKind backend = BackendKind::Classical;
    int polygon_n = 5;
    polygon::Composition polygon_comp = polygon::Composition::TypeI;
    bool oblivious = false;
};

struct SimulationConfig {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct PerInputCounts {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double analytic_p = 0.0;
};

struct Report {
    std::string task;
    std::string backend;
    int n = 2;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool oblivious = false;
    bool degenerate = false;  // zero-trial run, empirical undefined
    double empirical = 0.0;
    double analytic = 0.0;
    double standard_error = 0.0;
    double z = 0.0;
    std::vector<PerInputCounts> per_input;  // 4^n rows, x-major
    std::uint64_t digest = 0;
    bool no_signaling = true;
};

// Mean over all 4^n input pairs of the backend's per-input success
// probability.
double analytic_success(const ProtocolRun& run);

// Samples uniform inputs per trial from stream (seed, trial index), runs
// encode -> transmit -> decode, and aggregates.  Honors run.oblivious.
Report run_trials(const SimulationConfig& config, const ProtocolRun& run);

// Convenience wrapper forcing deferred finalization.
Report run_oblivious_trials(const SimulationConfig& config, ProtocolRun run);

// Transcript-level no-signaling: Alice's message label is a function of x
// alone and Bob's of y alone.
bool check_no_signaling(const std::vector<TrialRecord>& transcript);

std::uint64_t transcript_digest(const std::vector<TrialRecord>& transcript);

// JSON document with the report schema keys plus digest/diagnostic extras;
// parse inverts emit exactly.
std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

// One row per input pair plus a trailing summary row.
std::string report_to_csv(const Report& report);

}  // namespace dclc::harness
