#include "dclc/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "dclc/classical.hpp"
#include "dclc/nogo.hpp"
#include "dclc/quantum.hpp"

namespace dclc::harness {
namespace {

using nlohmann::json;

class ClassicalBackend final : public Backend {
public:
    explicit ClassicalBackend(const boolfn::DualLayerTask& task) : task_(task) {
        if (task.n != 2) {
            throw std::invalid_argument(
                "classical backend: exhaustive strategies cover n = 2 only");
        }
        strategy_ = classical::max_classical_success(task).strategy;
        for (std::uint32_t x = 0; x < 4; ++x) {
            for (std::uint32_t y = 0; y < 4; ++y) {
                correct_[x][y] = decode(x, y) == boolfn::evaluate_task(task, x, y);
            }
        }
    }

    std::string name() const override { return "classical"; }
    int n() const override { return 2; }

    double success_probability(std::uint32_t x, std::uint32_t y) const override {
        return correct_[x][y] ? 1.0 : 0.0;
    }

    TrialRecord sample(std::uint32_t x, std::uint32_t y,
                       rng::CounterRng&) const override {
        TrialRecord rec;
        rec.x = x;
        rec.y = y;
        rec.alice_message = strategy_.encode_a[x];
        rec.bob_message = strategy_.encode_b[y];
        rec.output = decode(x, y);
        rec.success = correct_[x][y];
        return rec;
    }

private:
    int decode(std::uint32_t x, std::uint32_t y) const {
        return strategy_.decode[2 * strategy_.encode_a[x] + strategy_.encode_b[y]];
    }

    boolfn::DualLayerTask task_;
    classical::ClassicalStrategy strategy_{};
    std::array<std::array<bool, 4>, 4> correct_{};
};

class QuantumBackend final : public Backend {
public:
    explicit QuantumBackend(const boolfn::DualLayerTask& task) : task_(task) {
        if (!task.inner.is_balanced()) {
            throw quantum::UnsupportedProtocolError(
                "quantum backend: the protocol family covers balanced inner "
                "functions");
        }
    }

    std::string name() const override { return "quantum"; }
    int n() const override { return task_.n; }

    double success_probability(std::uint32_t x, std::uint32_t y) const override {
        const auto run = quantum::run_blockwise_protocol(task_, x, y);
        return run.output == boolfn::evaluate_task(task_, x, y) ? 1.0 : 0.0;
    }

    TrialRecord sample(std::uint32_t x, std::uint32_t y,
                       rng::CounterRng&) const override {
        TrialRecord rec;
        rec.x = x;
        rec.y = y;
        // The encoding operations are deterministic functions of the own
        // input; their labels stand in for the quantum messages.
        rec.alice_message = x;
        rec.bob_message = y;
        const auto run = quantum::run_blockwise_protocol(task_, x, y);
        rec.output = run.output;
        rec.success = run.output == boolfn::evaluate_task(task_, x, y);
        return rec;
    }

    bool supports_oblivious() const override {
        if (task_.n != 2) return false;
        const std::string inner = task_.inner.to_string();
        return inner == "0110" || inner == "1001";
    }

    TrialRecord sample_oblivious(std::uint32_t x, std::uint32_t y,
                                 rng::CounterRng&) const override {
        quantum::ObliviousRun run(task_.inner);
        const quantum::BellLabel label = run.encode_and_measure(x, y);
        TrialRecord rec;
        rec.x = x;
        rec.y = y;
        rec.alice_message = x;
        rec.bob_message = y;
        // The outer function enters only now, after the measurement.
        rec.output = run.finalize(task_.outer);
        rec.success = rec.output == boolfn::evaluate_task(task_, x, y);
        (void)label;
        return rec;
    }

private:
    boolfn::DualLayerTask task_;
};

class PolygonBackend final : public Backend {
public:
    PolygonBackend(const boolfn::DualLayerTask& task, int polygon_n,
                   polygon::Composition comp)
        : task_(task), polygon_n_(polygon_n) {
        if (task.n != 2) {
            throw std::invalid_argument(
                "polygon backend: strategies cover n = 2 only");
        }
        strategy_ = nogo::canonical_polygon_strategy(polygon_n, comp, task);
        const auto model = polygon::build_polygon(polygon_n);
        for (std::uint32_t x = 0; x < 4; ++x) {
            for (std::uint32_t y = 0; y < 4; ++y) {
                const double click = polygon::pairing(
                    strategy_.decoder,
                    polygon::product_state(
                        model.pure_states[x % polygon_n],
                        model.pure_states[y % polygon_n]));
                click_[x][y] = std::clamp(click, 0.0, 1.0);
            }
        }
    }

    std::string name() const override { return "polygon"; }
    int n() const override { return 2; }

    double success_probability(std::uint32_t x, std::uint32_t y) const override {
        return strategy_.success[x][y];
    }

    TrialRecord sample(std::uint32_t x, std::uint32_t y,
                       rng::CounterRng& rng) const override {
        TrialRecord rec;
        rec.x = x;
        rec.y = y;
        rec.alice_message = x % polygon_n_;
        rec.bob_message = y % polygon_n_;
        rec.output = rng.next_double() < click_[x][y] ? 1 : 0;
        rec.success = rec.output == boolfn::evaluate_task(task_, x, y);
        return rec;
    }

private:
    boolfn::DualLayerTask task_;
    int polygon_n_;
    nogo::CanonicalStrategy strategy_{};
    std::array<std::array<double, 4>, 4> click_{};
};

std::unique_ptr<Backend> make_backend(const ProtocolRun& run) {
    switch (run.backend) {
        case BackendKind::Classical:
            return make_classical_backend(run.task);
        case BackendKind::Quantum:
            return make_quantum_backend(run.task);
        default:
            return make_polygon_backend(run.task, run.polygon_n,
                                        run.polygon_comp);
    }
}

}  // namespace

const char* backend_kind_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::Classical: return "classical";
        case BackendKind::Quantum: return "quantum";
        default: return "polygon";
    }
}

BackendKind parse_backend_kind(const std::string& name) {
    if (name == "classical") return BackendKind::Classical;
    if (name == "quantum") return BackendKind::Quantum;
    if (name == "polygon") return BackendKind::Polygon;
    throw std::invalid_argument("unknown backend: " + name);
}

TrialRecord Backend::sample_oblivious(std::uint32_t, std::uint32_t,
                                      rng::CounterRng&) const {
    throw UnsupportedModeError(
        name() + " backend does not support deferred finalization");
}

double analytic_success(const ProtocolRun& run) {
    const auto backend = make_backend(run);
    const std::uint32_t side = 1u << backend->n();
    double total = 0.0;
    for (std::uint32_t x = 0; x < side; ++x) {
        for (std::uint32_t y = 0; y < side; ++y) {
            total += backend->success_probability(x, y);
        }
    }
    return total / (static_cast<double>(side) * side);
}

Report run_trials(const SimulationConfig& config, const ProtocolRun& run) {
    const auto backend = make_backend(run);
    if (run.oblivious && !backend->supports_oblivious()) {
        throw UnsupportedModeError(backend->name() +
                                   " backend does not support deferred "
                                   "finalization");
    }
    const int n = backend->n();
    const std::uint32_t side = 1u << n;

    Report report;
    report.task = boolfn::format_task_literal(run.task);
    report.backend = backend->name();
    report.n = n;
    report.trials = config.trials;
    report.seed = config.seed;
    report.oblivious = run.oblivious;
    report.per_input.resize(static_cast<std::size_t>(side) * side);
    double analytic_total = 0.0;
    for (std::uint32_t x = 0; x < side; ++x) {
        for (std::uint32_t y = 0; y < side; ++y) {
            auto& row = report.per_input[static_cast<std::size_t>(x) * side + y];
            row.x = x;
            row.y = y;
            row.analytic_p = backend->success_probability(x, y);
            analytic_total += row.analytic_p;
        }
    }
    report.analytic = analytic_total / (static_cast<double>(side) * side);

    if (config.trials == 0) {
        report.degenerate = true;
        report.digest = transcript_digest({});
        return report;
    }

    std::vector<TrialRecord> transcript(config.trials);
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        auto rng = rng::CounterRng::for_stream(config.seed, t);
        const auto x = static_cast<std::uint32_t>(rng.next_below(side));
        const auto y = static_cast<std::uint32_t>(rng.next_below(side));
        TrialRecord rec = run.oblivious ? backend->sample_oblivious(x, y, rng)
                                        : backend->sample(x, y, rng);
        rec.trial = t;
        transcript[t] = rec;
        auto& row = report.per_input[static_cast<std::size_t>(x) * side + y];
        ++row.trials;
        if (rec.success) {
            ++row.successes;
            ++successes;
        }
    }
    report.empirical =
        static_cast<double>(successes) / static_cast<double>(config.trials);
    report.standard_error =
        std::sqrt(report.analytic * (1.0 - report.analytic) /
                  static_cast<double>(config.trials));
    if (report.standard_error > 0.0) {
        report.z = (report.empirical - report.analytic) / report.standard_error;
    } else if (report.empirical != report.analytic) {
        report.z = std::numeric_limits<double>::infinity();
    }
    report.no_signaling = check_no_signaling(transcript);
    report.digest = transcript_digest(transcript);
    return report;
}

Report run_oblivious_trials(const SimulationConfig& config, ProtocolRun run) {
    run.oblivious = true;
    return run_trials(config, run);
}

bool check_no_signaling(const std::vector<TrialRecord>& transcript) {
    std::unordered_map<std::uint32_t, std::uint32_t> alice;
    std::unordered_map<std::uint32_t, std::uint32_t> bob;
    for (const auto& rec : transcript) {
        const auto [ita, inserted_a] = alice.emplace(rec.x, rec.alice_message);
        if (!inserted_a && ita->second != rec.alice_message) return false;
        const auto [itb, inserted_b] = bob.emplace(rec.y, rec.bob_message);
        if (!inserted_b && itb->second != rec.bob_message) return false;
    }
    return true;
}

std::uint64_t transcript_digest(const std::vector<TrialRecord>& transcript) {
    // FNV-1a folded over 64-bit words of each record.
    std::uint64_t digest = 0xcbf29ce484222325ull;
    auto fold = [&digest](std::uint64_t word) {
        digest ^= word;
        digest *= 0x100000001b3ull;
    };
    for (const auto& rec : transcript) {
        fold(rec.trial);
        fold((static_cast<std::uint64_t>(rec.x) << 32) | rec.y);
        fold((static_cast<std::uint64_t>(rec.alice_message) << 32) |
             rec.bob_message);
        fold((static_cast<std::uint64_t>(rec.success ? 1 : 0) << 32) |
             static_cast<std::uint32_t>(rec.output));
    }
    return digest;
}

std::string report_to_json(const Report& report) {
    json doc;
    doc["task"] = report.task;
    doc["backend"] = report.backend;
    doc["n"] = report.n;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["empirical"] = report.empirical;
    doc["analytic"] = report.analytic;
    doc["z"] = report.z;
    json rows = json::array();
    for (const auto& row : report.per_input) {
        rows.push_back({{"x", row.x},
                        {"y", row.y},
                        {"successes", row.successes},
                        {"trials", row.trials}});
    }
    doc["per_input"] = std::move(rows);
    doc["standard_error"] = report.standard_error;
    doc["oblivious"] = report.oblivious;
    doc["degenerate"] = report.degenerate;
    doc["digest"] = report.digest;
    doc["no_signaling"] = report.no_signaling;
    return doc.dump(2);
}

Report report_from_json(const std::string& text) {
    const json doc = json::parse(text);
    Report report;
    report.task = doc.at("task").get<std::string>();
    report.backend = doc.at("backend").get<std::string>();
    report.n = doc.at("n").get<int>();
    report.trials = doc.at("trials").get<std::uint64_t>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.empirical = doc.at("empirical").get<double>();
    report.analytic = doc.at("analytic").get<double>();
    report.z = doc.at("z").get<double>();
    for (const auto& row : doc.at("per_input")) {
        PerInputCounts counts;
        counts.x = row.at("x").get<std::uint32_t>();
        counts.y = row.at("y").get<std::uint32_t>();
        counts.successes = row.at("successes").get<std::uint64_t>();
        counts.trials = row.at("trials").get<std::uint64_t>();
        report.per_input.push_back(counts);
    }
    report.standard_error = doc.value("standard_error", 0.0);
    report.oblivious = doc.value("oblivious", false);
    report.degenerate = doc.value("degenerate", false);
    report.digest = doc.value("digest", std::uint64_t{0});
    report.no_signaling = doc.value("no_signaling", true);
    return report;
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "x,y,successes,trials,analytic_p\n";
    out.precision(17);
    std::uint64_t successes = 0;
    for (const auto& row : report.per_input) {
        successes += row.successes;
        out << row.x << ',' << row.y << ',' << row.successes << ','
            << row.trials << ',' << row.analytic_p << '\n';
    }
    out << "total,," << successes << ',' << report.trials << ','
        << report.analytic << '\n';
    return out.str();
}

std::unique_ptr<Backend> make_classical_backend(
    const boolfn::DualLayerTask& task) {
    return std::make_unique<ClassicalBackend>(task);
}

std::unique_ptr<Backend> make_quantum_backend(
    const boolfn::DualLayerTask& task) {
    return std::make_unique<QuantumBackend>(task);
}

std::unique_ptr<Backend> make_polygon_backend(const boolfn::DualLayerTask& task,
                                              int polygon_n,
                                              polygon::Composition comp) {
    return std::make_unique<PolygonBackend>(task, polygon_n, comp);
}

}  // namespace dclc::harness
