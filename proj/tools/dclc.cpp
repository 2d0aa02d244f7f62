// dclc: command-line front end for the dual-layer limited-communication
// toolkit.  Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 solver indeterminate.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dclc/boolfn.hpp"
#include "dclc/classical.hpp"
#include "dclc/harness.hpp"
#include "dclc/nogo.hpp"
#include "dclc/polygon.hpp"
#include "dclc/quantum.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;
constexpr int kIndeterminate = 3;

constexpr double kDeterministicTol = 1e-12;

dclc::polygon::Composition parse_model(const std::string& name) {
    if (name == "type1") return dclc::polygon::Composition::TypeI;
    if (name == "type2") return dclc::polygon::Composition::TypeII;
    throw std::invalid_argument("unknown model '" + name +
                                "' (expected type1 or type2)");
}

std::uint32_t parse_bit_string(const std::string& bits, std::size_t length) {
    if (bits.size() != length) {
        throw std::invalid_argument("expected a " + std::to_string(length) +
                                    "-bit string, got '" + bits + "'");
    }
    std::uint32_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit strings use only 0/1: '" + bits +
                                        "'");
        }
        value = (value << 1) | static_cast<std::uint32_t>(c == '1');
    }
    return value;
}

std::string to_bit_string(std::uint32_t value, int width) {
    std::string bits(width, '0');
    for (int i = 0; i < width; ++i) {
        if (value & (1u << (width - 1 - i))) bits[i] = '1';
    }
    return bits;
}

json vec_json(const dclc::polygon::Vec3& v) {
    return json::array({v[0], v[1], v[2]});
}

json mat_json(const dclc::polygon::Mat3& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        rows.push_back(json::array({m[3 * r], m[3 * r + 1], m[3 * r + 2]}));
    }
    return rows;
}

void print_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------- classify ----------

int cmd_classify(int n, const std::string& task_literal,
                 const std::string& format) {
    if (n != 2) {
        throw std::invalid_argument("classification is exhaustive for n = 2");
    }
    if (format != "json" && format != "csv") {
        throw std::invalid_argument("unknown format '" + format + "'");
    }
    if (task_literal.empty()) {
        const auto counts = dclc::classical::census();
        if (format == "json") {
            print_json(json{{"total", counts.total},
                            {"trivial", counts.trivial},
                            {"no_comm", counts.no_comm},
                            {"one_way", counts.one_way},
                            {"two_way", counts.two_way},
                            {"nontrivial", counts.nontrivial}});
        } else {
            std::cout << "total,trivial,no_comm,one_way,two_way,nontrivial\n"
                      << counts.total << ',' << counts.trivial << ','
                      << counts.no_comm << ',' << counts.one_way << ','
                      << counts.two_way << ',' << counts.nontrivial << "\n";
        }
        return kOk;
    }
    const auto task = dclc::boolfn::parse_task_literal(task_literal);
    const auto result = dclc::classical::classify_triviality(task);
    const auto ratio = dclc::boolfn::output_ratio(task);
    const auto best = dclc::classical::max_classical_success(task);
    const char* verdict = dclc::classical::verdict_name(result.verdict);
    const bool trivial =
        result.verdict != dclc::classical::Verdict::Nontrivial;
    if (format == "json") {
        print_json(json{
            {"task", dclc::boolfn::format_task_literal(task)},
            {"n", task.n},
            {"verdict", verdict},
            {"trivial", trivial},
            {"criteria_match", dclc::boolfn::matches_triviality_criteria(task)},
            {"output_ratio", json::array({ratio.first, ratio.second})},
            {"max_classical_success",
             json{{"fraction", best.success.to_string()},
                  {"value", best.success.to_double()}}}});
    } else {
        std::cout << "task,verdict,trivial,zeros,ones,max_success\n"
                  << dclc::boolfn::format_task_literal(task) << ',' << verdict
                  << ',' << (trivial ? 1 : 0) << ',' << ratio.first << ','
                  << ratio.second << ',' << best.success.to_string() << "\n";
    }
    return kOk;
}

// ---------- quantum ----------

int cmd_quantum_table1() {
    namespace q = dclc::quantum;
    namespace b = dclc::boolfn;

    bool bell_ok = true;
    json per_input = json::array();
    const auto bell = q::bell_basis_measurement();
    static const char* kLabels[4] = {"phi_plus", "phi_minus", "psi_plus",
                                     "psi_minus"};
    for (std::uint32_t x = 0; x < 4; ++x) {
        for (std::uint32_t y = 0; y < 4; ++y) {
            const auto state =
                q::apply_encoding(q::phi_plus(), q::pauli_for_bits(x >> 1, x & 1),
                                  q::pauli_for_bits(y >> 1, y & 1));
            const auto probs = q::measure(state, bell);
            const auto expected = q::bell_label_for_inputs(x, y);
            const int idx = static_cast<int>(expected);
            if (std::abs(probs[idx] - 1.0) > kDeterministicTol) bell_ok = false;
            json dist;
            for (int i = 0; i < 4; ++i) dist[kLabels[i]] = probs[i];
            per_input.push_back(json{{"x", to_bit_string(x, 2)},
                                     {"y", to_bit_string(y, 2)},
                                     {"label", q::bell_label_name(expected)},
                                     {"distribution", dist}});
        }
    }

    // Every nontrivial task with a balanced inner function must run its
    // table protocol exactly.
    bool protocols_ok = true;
    int protocol_tasks = 0;
    for (const auto& task : b::all_two_bit_tasks()) {
        if (b::matches_triviality_criteria(task)) continue;
        if (!task.inner.is_balanced()) continue;
        ++protocol_tasks;
        for (std::uint32_t x = 0; x < 4 && protocols_ok; ++x) {
            for (std::uint32_t y = 0; y < 4; ++y) {
                if (std::abs(q::balanced_protocol_success(task, x, y) - 1.0) >
                    kDeterministicTol) {
                    protocols_ok = false;
                    break;
                }
            }
        }
    }

    // Deferred finalization must be correct for every outer function.
    bool finalize_ok = true;
    const auto inner = b::named_function("XOR");
    for (std::uint32_t outer_bits = 0; outer_bits < 16; ++outer_bits) {
        const auto outer =
            b::BooleanFunction::from_string(2, to_bit_string(outer_bits, 4));
        const auto task = b::make_task(outer, inner);
        for (std::uint32_t x = 0; x < 4; ++x) {
            for (std::uint32_t y = 0; y < 4; ++y) {
                q::ObliviousRun run(inner);
                run.encode_and_measure(x, y);
                if (run.finalize(outer) != b::evaluate_task(task, x, y)) {
                    finalize_ok = false;
                }
            }
        }
    }

    const bool all_ok = bell_ok && protocols_ok && finalize_ok;
    print_json(json{{"bell_table_ok", bell_ok},
                    {"protocol_tasks", protocol_tasks},
                    {"protocols_ok", protocols_ok},
                    {"finalize_ok", finalize_ok},
                    {"all_ok", all_ok},
                    {"per_input", per_input}});
    return all_ok ? kOk : kVerificationFailure;
}

int cmd_quantum_oblivious(const std::string& x_bits, const std::string& y_bits) {
    namespace q = dclc::quantum;
    namespace b = dclc::boolfn;
    const std::uint32_t x = parse_bit_string(x_bits, 2);
    const std::uint32_t y = parse_bit_string(y_bits, 2);
    const auto inner = b::named_function("XOR");

    q::ObliviousRun probe(inner);
    const auto label = probe.encode_and_measure(x, y);
    const auto& z = probe.inner_values();

    bool all_correct = true;
    json outputs;
    for (std::uint32_t outer_bits = 0; outer_bits < 16; ++outer_bits) {
        const auto outer =
            b::BooleanFunction::from_string(2, to_bit_string(outer_bits, 4));
        q::ObliviousRun run(inner);
        run.encode_and_measure(x, y);
        const int output = run.finalize(outer);
        const int expected = b::evaluate_task(b::make_task(outer, inner), x, y);
        if (output != expected) all_correct = false;
        outputs[to_bit_string(outer_bits, 4)] =
            json{{"output", output}, {"expected", expected}};
    }
    print_json(json{{"x", x_bits},
                    {"y", y_bits},
                    {"inner", inner.to_string()},
                    {"bell_label", q::bell_label_name(label)},
                    {"inner_values", json::array({z[0], z[1]})},
                    {"outer_outputs", outputs},
                    {"all_correct", all_correct}});
    return all_correct ? kOk : kVerificationFailure;
}

int cmd_quantum_search(const std::string& task_literal, std::uint64_t seed,
                       std::uint64_t samples) {
    const auto task = dclc::boolfn::parse_task_literal(task_literal);
    const auto result = dclc::quantum::falsification_search(task, seed, samples);
    const double bound = 1.0 - 1e-3;
    const bool within_bound = result.best_success <= bound;
    print_json(json{
        {"task", dclc::boolfn::format_task_literal(task)},
        {"seed", seed},
        {"samples", result.samples},
        {"best_success", result.best_success},
        {"best_a", result.best_a},
        {"best_b", result.best_b},
        {"bound", bound},
        {"within_bound", within_bound}});
    return within_bound ? kOk : kVerificationFailure;
}

// ---------- polygon ----------

int cmd_polygon_check(int n, const std::string& model_name,
                      const std::string& format) {
    if (format != "json") {
        throw std::invalid_argument("polygon check emits json only");
    }
    const auto comp = parse_model(model_name);
    const auto base = dclc::polygon::build_polygon(n);
    const auto model = dclc::polygon::build_bipartite(base, comp);
    const bool ok = dclc::polygon::consistency_check(model);

    json doc;
    doc["n"] = n;
    doc["parity"] = dclc::polygon::parity_name(base.parity);
    doc["composition"] = dclc::polygon::composition_name(comp);
    doc["radius"] = base.radius;
    doc["consistent"] = ok;
    doc["unit"] = vec_json(base.unit);
    json states = json::array();
    for (const auto& s : base.pure_states) states.push_back(vec_json(s));
    doc["pure_states"] = states;
    json effects = json::array();
    for (const auto& e : base.effects) effects.push_back(vec_json(e));
    doc["effects"] = effects;
    json complements = json::array();
    for (const auto& e : base.complement_effects) {
        complements.push_back(vec_json(e));
    }
    doc["complement_effects"] = complements;
    json transforms = json::array();
    for (const auto& t : base.transforms) {
        transforms.push_back(json{{"steps", t.steps},
                                  {"sign", t.sign},
                                  {"matrix", mat_json(t.matrix)}});
    }
    doc["transforms"] = transforms;
    json product_states = json::array();
    for (const auto& s : model.product_states) {
        product_states.push_back(mat_json(s));
    }
    doc["product_states"] = product_states;
    json product_effects = json::array();
    for (const auto& e : model.product_effects) {
        product_effects.push_back(mat_json(e));
    }
    doc["product_effects"] = product_effects;
    if (comp == dclc::polygon::Composition::TypeI) {
        json entangled = json::array();
        for (const auto& s : model.entangled_states) {
            entangled.push_back(mat_json(s));
        }
        doc["entangled_states"] = entangled;
    } else {
        json entangled = json::array();
        for (const auto& e : model.entangled_effects) {
            entangled.push_back(mat_json(e));
        }
        doc["entangled_effects"] = entangled;
        json clubbed = json::array();
        for (const auto& e : model.clubbed_effects) {
            clubbed.push_back(mat_json(e));
        }
        doc["clubbed_effects"] = clubbed;
    }
    print_json(doc);
    return ok ? kOk : kVerificationFailure;
}

// ---------- nogo ----------

int cmd_nogo_verify(int n, const std::string& model_name,
                    const std::string& task_literal, int jobs) {
    const auto comp = parse_model(model_name);
    std::optional<dclc::boolfn::DualLayerTask> only;
    if (!task_literal.empty()) {
        only = dclc::boolfn::parse_task_literal(task_literal);
    }
    const auto report = dclc::nogo::verify_no_go(n, comp, only, jobs);

    json tasks = json::array();
    std::uint64_t feasible_total = 0;
    for (const auto& t : report.tasks) {
        feasible_total += t.feasible;
        tasks.push_back(json{
            {"task", dclc::boolfn::format_task_literal(t.task)},
            {"trivial", t.task_trivial},
            {"assignments_checked", t.assignments_checked},
            {"feasible", t.feasible},
            {"indeterminate", t.indeterminate},
            {"max_agreement", t.max_agreement}});
    }
    print_json(json{{"n", report.n},
                    {"model", dclc::polygon::composition_name(comp)},
                    {"tasks", tasks},
                    {"task_count", report.tasks.size()},
                    {"feasible_total", feasible_total},
                    {"total_indeterminate", report.total_indeterminate},
                    {"all_nontrivial_infeasible",
                     report.all_nontrivial_infeasible}});
    if (report.total_indeterminate > 0) return kIndeterminate;
    if (!report.all_nontrivial_infeasible) return kVerificationFailure;
    return kOk;
}

// ---------- simulate / report ----------

dclc::harness::Report simulate_once(const std::string& task_literal,
                                    const std::string& backend,
                                    std::uint64_t trials, std::uint64_t seed,
                                    bool oblivious, int polygon_n,
                                    const std::string& polygon_model) {
    dclc::harness::ProtocolRun run;
    run.task = dclc::boolfn::parse_task_literal(task_literal);
    run.backend = dclc::harness::parse_backend_kind(backend);
    run.polygon_n = polygon_n;
    run.polygon_comp = parse_model(polygon_model);
    run.oblivious = oblivious;
    dclc::harness::SimulationConfig config;
    config.trials = trials;
    config.seed = seed;
    return dclc::harness::run_trials(config, run);
}

int cmd_simulate(const std::string& task_literal, const std::string& backend,
                 std::uint64_t trials, std::uint64_t seed, bool oblivious,
                 int polygon_n, const std::string& polygon_model,
                 const std::string& format) {
    if (format != "json" && format != "csv") {
        throw std::invalid_argument("unknown format '" + format + "'");
    }
    const auto report = simulate_once(task_literal, backend, trials, seed,
                                      oblivious, polygon_n, polygon_model);
    if (format == "json") {
        std::cout << dclc::harness::report_to_json(report) << "\n";
    } else {
        std::cout << dclc::harness::report_to_csv(report);
    }
    return kOk;
}

int cmd_report(const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    struct Entry {
        const char* name;
        const char* task;
        const char* backend;
        bool oblivious;
    };
    const Entry entries[] = {
        {"classical_or_xor", "F:OR,f:XOR", "classical", false},
        {"quantum_or_xor", "F:OR,f:XOR", "quantum", false},
        {"quantum_or_xor_oblivious", "F:OR,f:XOR", "quantum", true},
        {"polygon_or_xor", "F:OR,f:XOR", "polygon", false},
    };
    json index = json::array();
    for (const auto& entry : entries) {
        const auto report = simulate_once(entry.task, entry.backend, 10000,
                                          42, entry.oblivious, 5, "type1");
        const fs::path json_path = fs::path(out_dir) / (std::string(entry.name) + ".json");
        const fs::path csv_path = fs::path(out_dir) / (std::string(entry.name) + ".csv");
        std::ofstream(json_path) << dclc::harness::report_to_json(report)
                                 << "\n";
        std::ofstream(csv_path) << dclc::harness::report_to_csv(report);
        index.push_back(json{{"name", entry.name},
                             {"task", entry.task},
                             {"backend", entry.backend},
                             {"oblivious", entry.oblivious},
                             {"empirical", report.empirical},
                             {"analytic", report.analytic},
                             {"digest", report.digest},
                             {"json", json_path.string()},
                             {"csv", csv_path.string()}});
    }
    const fs::path index_path = fs::path(out_dir) / "index.json";
    std::ofstream(index_path) << index.dump(2) << "\n";
    print_json(index);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-layer limited-communication toolkit"};
    app.require_subcommand(1);

    // classify
    auto* classify = app.add_subcommand(
        "classify", "Census or single-task triviality classification");
    int classify_n = 2;
    std::string classify_task;
    std::string classify_format = "json";
    classify->add_option("--n", classify_n, "string length (2)");
    classify->add_option("--task", classify_task, "task literal F:...,f:...");
    classify->add_option("--format", classify_format, "json|csv");

    // quantum
    auto* quantum = app.add_subcommand("quantum", "Bell-protocol tools");
    quantum->require_subcommand(1);
    auto* table1 = quantum->add_subcommand(
        "verify-table1", "Verify the protocol table and deferred finalize");
    auto* oblivious = quantum->add_subcommand(
        "oblivious", "One deferred-finalization run for fixed inputs");
    std::string obl_x, obl_y;
    oblivious->add_option("--x", obl_x, "Alice's 2-bit input")->required();
    oblivious->add_option("--y", obl_y, "Bob's 2-bit input")->required();
    auto* search = quantum->add_subcommand(
        "search", "Randomized falsification search over one-qubit strategies");
    std::string search_task;
    std::uint64_t search_seed = 1;
    std::uint64_t search_samples = 10000;
    search->add_option("--task", search_task, "task literal")->required();
    search->add_option("--seed", search_seed, "root seed");
    search->add_option("--samples", search_samples, "strategies to sample");

    // polygon
    auto* poly = app.add_subcommand("polygon", "Polygon-model tools");
    poly->require_subcommand(1);
    auto* poly_check = poly->add_subcommand(
        "check", "Build a composition, run consistency checks, dump it");
    int poly_n = 5;
    std::string poly_model = "type1";
    std::string poly_format = "json";
    poly_check->add_option("--n", poly_n, "polygon size")->required();
    poly_check->add_option("--model", poly_model, "type1|type2");
    poly_check->add_option("--format", poly_format, "json");

    // nogo
    auto* nogo = app.add_subcommand("nogo", "Perfect-decoding sweeps");
    nogo->require_subcommand(1);
    auto* nogo_verify = nogo->add_subcommand(
        "verify", "Sweep encoding assignments for perfect decodings");
    int nogo_n = 5;
    std::string nogo_model = "type1";
    std::string nogo_task;
    int nogo_jobs = 0;
    nogo_verify->add_option("--n", nogo_n, "polygon size")->required();
    nogo_verify->add_option("--model", nogo_model, "type1|type2");
    nogo_verify->add_option("--task", nogo_task, "restrict to one task");
    nogo_verify->add_option("--jobs", nogo_jobs, "worker threads (0 = auto)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials");
    std::string sim_task, sim_backend;
    std::uint64_t sim_trials = 10000;
    std::uint64_t sim_seed = 1;
    bool sim_oblivious = false;
    int sim_polygon_n = 5;
    std::string sim_polygon_model = "type1";
    std::string sim_format = "json";
    simulate->add_option("--task", sim_task, "task literal")->required();
    simulate->add_option("--backend", sim_backend, "classical|quantum|polygon")
        ->required();
    simulate->add_option("--trials", sim_trials, "trial count");
    simulate->add_option("--seed", sim_seed, "root seed");
    simulate->add_flag("--oblivious", sim_oblivious,
                       "withhold the outer function until after messages");
    simulate->add_option("--polygon-n", sim_polygon_n,
                         "polygon size for the polygon backend");
    simulate->add_option("--polygon-model", sim_polygon_model, "type1|type2");
    simulate->add_option("--format", sim_format, "json|csv");

    // report
    auto* report = app.add_subcommand("report", "Write a standard report batch");
    std::string report_out;
    report->add_option("--out", report_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (classify->parsed()) {
            return cmd_classify(classify_n, classify_task, classify_format);
        }
        if (table1->parsed()) return cmd_quantum_table1();
        if (oblivious->parsed()) return cmd_quantum_oblivious(obl_x, obl_y);
        if (search->parsed()) {
            return cmd_quantum_search(search_task, search_seed, search_samples);
        }
        if (poly_check->parsed()) {
            return cmd_polygon_check(poly_n, poly_model, poly_format);
        }
        if (nogo_verify->parsed()) {
            return cmd_nogo_verify(nogo_n, nogo_model, nogo_task, nogo_jobs);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_task, sim_backend, sim_trials, sim_seed,
                                sim_oblivious, sim_polygon_n, sim_polygon_model,
                                sim_format);
        }
        if (report->parsed()) return cmd_report(report_out);
    } catch (const dclc::harness::UnsupportedModeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
