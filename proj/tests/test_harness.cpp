#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "dclc/boolfn.hpp"
#include "dclc/harness.hpp"
#include "dclc/quantum.hpp"

using namespace dclc;
using harness::BackendKind;

namespace {

boolfn::DualLayerTask task_of(const std::string& outer,
                              const std::string& inner) {
    return boolfn::make_task(boolfn::named_function(outer),
                             boolfn::named_function(inner));
}

harness::ProtocolRun run_of(const std::string& outer, const std::string& inner,
                            BackendKind kind) {
    harness::ProtocolRun run;
    run.task = task_of(outer, inner);
    run.backend = kind;
    return run;
}

harness::SimulationConfig config_of(std::uint64_t trials, std::uint64_t seed) {
    harness::SimulationConfig c;
    c.trials = trials;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("backend kind names round-trip") {
    CHECK(harness::parse_backend_kind("classical") == BackendKind::Classical);
    CHECK(harness::parse_backend_kind("quantum") == BackendKind::Quantum);
    CHECK(harness::parse_backend_kind("polygon") == BackendKind::Polygon);
    CHECK(std::string(harness::backend_kind_name(BackendKind::Quantum)) ==
          "quantum");
    CHECK_THROWS_AS(harness::parse_backend_kind("abacus"),
                    std::invalid_argument);
}

TEST_CASE("backend construction guards") {
    CHECK_THROWS_AS(harness::make_quantum_backend(task_of("OR", "AND")),
                    quantum::UnsupportedProtocolError);
    const auto long_task = boolfn::make_task(
        boolfn::BooleanFunction::from_string(3, "00000001"),
        boolfn::named_function("XOR"));
    CHECK_THROWS_AS(harness::make_classical_backend(long_task),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        harness::make_polygon_backend(long_task, 5,
                                      polygon::Composition::TypeI),
        std::invalid_argument);
}

TEST_CASE("analytic success of the reference backends") {
    CHECK(harness::analytic_success(
              run_of("OR", "XOR", BackendKind::Classical)) ==
          doctest::Approx(13.0 / 16.0).epsilon(1e-12));
    CHECK(harness::analytic_success(run_of("OR", "XOR", BackendKind::Quantum)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const auto poly = harness::analytic_success(
        run_of("OR", "XOR", BackendKind::Polygon));
    CHECK(poly > 0.5);
    CHECK(poly < 1.0);
}

TEST_CASE("quantum backend also serves longer strings") {
    harness::ProtocolRun run;
    std::string parity_table;
    for (int idx = 0; idx < 8; ++idx) {
        parity_table += (__builtin_popcount(idx) & 1) ? '1' : '0';
    }
    run.task = boolfn::make_task(
        boolfn::BooleanFunction::from_string(3, parity_table),
        boolfn::named_function("XNOR"));
    run.backend = BackendKind::Quantum;
    CHECK(harness::analytic_success(run) == doctest::Approx(1.0));
    const auto report = harness::run_trials(config_of(500, 9), run);
    CHECK(report.empirical == doctest::Approx(1.0));
    CHECK(report.n == 3);
    CHECK(report.no_signaling);
}

TEST_CASE("seeded runs are reproducible and seed-sensitive") {
    const auto run = run_of("OR", "XOR", BackendKind::Classical);
    const auto a = harness::run_trials(config_of(2000, 42), run);
    const auto b = harness::run_trials(config_of(2000, 42), run);
    CHECK(a.digest == b.digest);
    CHECK(a.empirical == b.empirical);
    CHECK(a.z == b.z);

    const auto c = harness::run_trials(config_of(2000, 43), run);
    CHECK(a.digest != c.digest);
}

TEST_CASE("trial aggregation is statistically sane") {
    const auto run = run_of("OR", "XOR", BackendKind::Classical);
    const auto report = harness::run_trials(config_of(20000, 7), run);
    CHECK(report.trials == 20000);
    CHECK(report.analytic == doctest::Approx(13.0 / 16.0));
    CHECK(std::abs(report.z) < 5.0);
    CHECK(report.no_signaling);
    CHECK_FALSE(report.degenerate);
    std::uint64_t total = 0, successes = 0;
    for (const auto& row : report.per_input) {
        CHECK((row.analytic_p == 0.0 || row.analytic_p == 1.0));
        total += row.trials;
        successes += row.successes;
        if (row.analytic_p == 1.0) CHECK(row.successes == row.trials);
        if (row.analytic_p == 0.0) CHECK(row.successes == 0);
    }
    CHECK(total == 20000);
    CHECK(report.empirical ==
          doctest::Approx(static_cast<double>(successes) / 20000.0));
    CHECK(report.per_input.size() == 16);
}

TEST_CASE("zero-trial runs are degenerate but well-formed") {
    const auto report = harness::run_trials(
        config_of(0, 5), run_of("OR", "XOR", BackendKind::Classical));
    CHECK(report.degenerate);
    CHECK(report.trials == 0);
    CHECK(report.no_signaling);
}

TEST_CASE("deterministic per-input tallies for the quantum backend") {
    const auto report = harness::run_trials(
        config_of(4000, 11), run_of("AND", "XNOR", BackendKind::Quantum));
    CHECK(report.empirical == doctest::Approx(1.0));
    CHECK(report.z == doctest::Approx(0.0));
    for (const auto& row : report.per_input) {
        CHECK(row.successes == row.trials);
    }
}

TEST_CASE("oblivious mode works exactly on supported backends") {
    auto run = run_of("OR", "XOR", BackendKind::Quantum);
    const auto report =
        harness::run_oblivious_trials(config_of(3000, 21), run);
    CHECK(report.oblivious);
    CHECK(report.empirical == doctest::Approx(1.0));
    CHECK(report.no_signaling);

    run.oblivious = true;
    const auto direct = harness::run_trials(config_of(3000, 21), run);
    CHECK(direct.digest == report.digest);
}

TEST_CASE("oblivious mode is rejected where messages need the outer function") {
    auto classical = run_of("OR", "XOR", BackendKind::Classical);
    classical.oblivious = true;
    CHECK_THROWS_AS(harness::run_trials(config_of(10, 1), classical),
                    harness::UnsupportedModeError);

    auto polygon_run = run_of("OR", "XOR", BackendKind::Polygon);
    polygon_run.oblivious = true;
    CHECK_THROWS_AS(harness::run_trials(config_of(10, 1), polygon_run),
                    harness::UnsupportedModeError);

    // A single-bit inner function is balanced, but the pair-deduction step
    // only serves XOR/XNOR, so deferral must be refused up front.
    auto single_bit = harness::ProtocolRun{};
    single_bit.task =
        boolfn::make_task(boolfn::named_function("OR"),
                          boolfn::BooleanFunction::from_string(2, "0011"));
    single_bit.backend = BackendKind::Quantum;
    single_bit.oblivious = true;
    CHECK_THROWS_AS(harness::run_trials(config_of(10, 1), single_bit),
                    harness::UnsupportedModeError);
}

TEST_CASE("polygon backend trials track their analytic grid") {
    auto run = run_of("OR", "XOR", BackendKind::Polygon);
    run.polygon_n = 5;
    run.polygon_comp = polygon::Composition::TypeI;
    const auto report = harness::run_trials(config_of(30000, 17), run);
    CHECK(report.backend == "polygon");
    CHECK(std::abs(report.z) < 5.0);
    CHECK(report.no_signaling);
    CHECK(report.analytic > 0.5);
    CHECK(report.analytic < 1.0);
}

TEST_CASE("no-signaling checker flags dependent messages") {
    std::vector<harness::TrialRecord> transcript(2);
    transcript[0].x = 0;
    transcript[0].y = 0;
    transcript[0].alice_message = 0;
    transcript[1].x = 0;
    transcript[1].y = 1;
    transcript[1].alice_message = 1;  // Alice's label moved with y
    CHECK_FALSE(harness::check_no_signaling(transcript));

    transcript[1].alice_message = 0;
    CHECK(harness::check_no_signaling(transcript));
}

TEST_CASE("transcript digest separates distinct transcripts") {
    std::vector<harness::TrialRecord> a(1), b(1);
    b[0].output = 1;
    CHECK(harness::transcript_digest(a) != harness::transcript_digest(b));
    CHECK(harness::transcript_digest(a) == harness::transcript_digest(a));
}

TEST_CASE("json reports round-trip") {
    const auto report = harness::run_trials(
        config_of(1500, 3), run_of("NAND", "XOR", BackendKind::Quantum));
    const auto text = harness::report_to_json(report);
    const auto back = harness::report_from_json(text);
    CHECK(back.task == report.task);
    CHECK(back.backend == report.backend);
    CHECK(back.n == report.n);
    CHECK(back.trials == report.trials);
    CHECK(back.seed == report.seed);
    CHECK(back.empirical == report.empirical);
    CHECK(back.analytic == report.analytic);
    CHECK(back.z == report.z);
    CHECK(back.digest == report.digest);
    CHECK(back.oblivious == report.oblivious);
    CHECK(back.per_input.size() == report.per_input.size());
    for (std::size_t i = 0; i < back.per_input.size(); ++i) {
        CHECK(back.per_input[i].x == report.per_input[i].x);
        CHECK(back.per_input[i].y == report.per_input[i].y);
        CHECK(back.per_input[i].successes == report.per_input[i].successes);
        CHECK(back.per_input[i].trials == report.per_input[i].trials);
    }
}

TEST_CASE("csv reports carry one row per input plus a summary") {
    const auto report = harness::run_trials(
        config_of(800, 13), run_of("OR", "XOR", BackendKind::Classical));
    const auto text = harness::report_to_csv(report);
    CHECK(text.rfind("x,y,successes,trials,analytic_p", 0) == 0);
    std::size_t lines = 0;
    for (char ch : text) {
        if (ch == '\n') ++lines;
    }
    CHECK(lines == 1 + 16 + 1);  // header, per-input rows, summary
}
