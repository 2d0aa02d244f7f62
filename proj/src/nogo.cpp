#include "dclc/nogo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dclc/classical.hpp"
#include "dclc/lp.hpp"
#include "dclc/rng.hpp"

namespace dclc::nogo {
namespace {

constexpr double kPi = 3.14159265358979323846;
// Click probabilities count as sharp 0/1 within this tolerance.
constexpr double kSharpTol = 1e-9;
// Feasibility policy: LP tolerance, acceptance band, and the tightened
// rerun applied to borderline verdicts.  Certificates are re-verified
// against the original data at kCertTol, looser than the pivot tolerance
// because the peak-normalized duals carry accumulated elimination noise.
constexpr double kLpEps = 1e-9;
constexpr double kFeasAccept = 1e-12;
constexpr double kLpEpsTight = 1e-11;
constexpr double kCertTol = 1e-7;
// Matrices closer than this are treated as the same encoded state.
constexpr double kMatchTol = 1e-9;

using polygon::Composition;
using polygon::Mat3;
using polygon::PolygonModel;
using polygon::Vec3;

int mod_n(int v, int n) { return ((v % n) + n) % n; }

double bilinear(const Vec3& a, const Mat3& omega, const Vec3& b) {
    double acc = 0.0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) acc += a[r] * omega[3 * r + c] * b[c];
    }
    return acc;
}

bool same_matrix(const Mat3& a, const Mat3& b) {
    for (int i = 0; i < 9; ++i) {
        if (std::abs(a[i] - b[i]) > kMatchTol) return false;
    }
    return true;
}

// Single-system effect generators: unit, the n extreme effects, and their
// complements.  These span the product effect cone used by TypeI.
std::vector<Vec3> effect_generators(const PolygonModel& model) {
    std::vector<Vec3> gens;
    gens.reserve(2 * model.n + 1);
    gens.push_back(model.unit);
    for (const Vec3& e : model.effects) gens.push_back(e);
    for (const Vec3& c : model.complement_effects) gens.push_back(c);
    return gens;
}

// TypeI LP: lambda/mu conic weights over the product generator pairs with
// lambda-part hitting each target exactly and lambda + mu resolving the
// bipartite unit, so the complement is conic by construction.
lp::Problem<double> generator_cone_problem(const std::vector<Vec3>& gens,
                                           const DecodingProblem& problem) {
    const int g_count = static_cast<int>(gens.size());
    const int pairs = g_count * g_count;
    lp::Problem<double> p;
    p.num_vars = 2 * pairs;
    p.rows.reserve(9 + problem.states.size());
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            std::vector<double> row(p.num_vars, 0.0);
            for (int ga = 0; ga < g_count; ++ga) {
                for (int gb = 0; gb < g_count; ++gb) {
                    const double v = gens[ga][r] * gens[gb][c];
                    row[ga * g_count + gb] = v;
                    row[pairs + ga * g_count + gb] = v;
                }
            }
            p.rows.push_back(std::move(row));
            p.rhs.push_back((r == 2 && c == 2) ? 1.0 : 0.0);
            p.types.push_back(lp::RowType::Equal);
        }
    }
    for (std::size_t s = 0; s < problem.states.size(); ++s) {
        std::vector<double> row(p.num_vars, 0.0);
        for (int ga = 0; ga < g_count; ++ga) {
            for (int gb = 0; gb < g_count; ++gb) {
                row[ga * g_count + gb] =
                    bilinear(gens[ga], problem.states[s], gens[gb]);
            }
        }
        p.rows.push_back(std::move(row));
        p.rhs.push_back(static_cast<double>(problem.targets[s]));
        p.types.push_back(lp::RowType::Equal);
    }
    return p;
}

// TypeII LP: the decoder matrix is free apart from the facet box
// constraints on every product vertex pair; the complement is automatically
// valid because probabilities stay in [0, 1].
lp::Problem<double> facet_cone_problem(const PolygonModel& model,
                                       const DecodingProblem& problem) {
    lp::Problem<double> p;
    p.num_vars = 18;  // decoder entries split into +/- parts
    auto add_row = [&p](const Mat3& coef, double sign, double rhs,
                        lp::RowType type) {
        std::vector<double> row(18, 0.0);
        for (int j = 0; j < 9; ++j) {
            row[j] = sign * coef[j];
            row[9 + j] = -sign * coef[j];
        }
        p.rows.push_back(std::move(row));
        p.rhs.push_back(rhs);
        p.types.push_back(type);
    };
    for (int i = 0; i < model.n; ++i) {
        for (int j = 0; j < model.n; ++j) {
            const Mat3 v = polygon::product_state(model.pure_states[i],
                                                  model.pure_states[j]);
            add_row(v, +1.0, 1.0, lp::RowType::LessEqual);
            add_row(v, -1.0, 0.0, lp::RowType::LessEqual);
        }
    }
    for (std::size_t s = 0; s < problem.states.size(); ++s) {
        add_row(problem.states[s], +1.0,
                static_cast<double>(problem.targets[s]), lp::RowType::Equal);
    }
    return p;
}

// Feasibility with the borderline policy: accept only decisively clean
// verdicts at 1e-9, rerun anything borderline at 1e-12, and degrade to
// Indeterminate when the tight run stays unclear or the Farkas certificate
// does not re-verify.
Feasibility decide(const lp::Problem<double>& p) {
    const auto certified = [&](const lp::Solution<double>& sol) {
        return sol.farkas_verified ||
               lp::verify_farkas(p, sol.farkas, kCertTol);
    };
    const auto first = lp::solve(p, kLpEps);
    if (first.status == lp::Status::Optimal &&
        first.phase1_value <= kFeasAccept) {
        return Feasibility::Feasible;
    }
    if (first.status == lp::Status::Infeasible &&
        first.phase1_value > 10.0 * kLpEps && certified(first)) {
        return Feasibility::Infeasible;
    }
    const auto second = lp::solve(p, kLpEpsTight);
    if (second.status == lp::Status::Optimal) return Feasibility::Feasible;
    if (second.status == lp::Status::Infeasible &&
        second.phase1_value > 10.0 * kLpEpsTight && certified(second)) {
        return Feasibility::Infeasible;
    }
#ifdef DCLC_LP_DEBUG
    std::fprintf(stderr,
                 "indeterminate: first status=%d phase1=%.3e verified=%d | "
                 "second status=%d phase1=%.3e verified=%d (vars=%d rows=%zu)\n",
                 static_cast<int>(first.status), first.phase1_value,
                 first.farkas_verified, static_cast<int>(second.status),
                 second.phase1_value, second.farkas_verified, p.num_vars,
                 p.rows.size());
#endif
    return Feasibility::Indeterminate;
}

// ---------------- sweep machinery ----------------

struct Context {
    PolygonModel model;
    Composition comp = Composition::TypeI;
    std::vector<Vec3> gens;
    // Entangled orbit collapsed to distinct matrices (TypeI only), with the
    // class id of every local transform pair.
    std::vector<Mat3> ent_classes;
    std::vector<std::vector<int>> class_of;
    std::array<std::uint64_t, 40> pow3{};
};

Context build_context(int n, Composition comp) {
    Context ctx;
    ctx.model = polygon::build_polygon(n);
    ctx.comp = comp;
    ctx.gens = effect_generators(ctx.model);
    ctx.pow3[0] = 1;
    for (std::size_t i = 1; i < ctx.pow3.size(); ++i) {
        ctx.pow3[i] = ctx.pow3[i - 1] * 3;
    }
    if (comp == Composition::TypeI) {
        const int m = 2 * n;
        ctx.class_of.assign(m, std::vector<int>(m, -1));
        for (int ia = 0; ia < m; ++ia) {
            const int ka = ia % n;
            const int pa = ia < n ? +1 : -1;
            for (int ib = 0; ib < m; ++ib) {
                const int kb = ib % n;
                const int pb = ib < n ? +1 : -1;
                const Mat3 state = polygon::entangled_state(n, ka, kb, pa, pb);
                int id = -1;
                for (std::size_t c = 0; c < ctx.ent_classes.size(); ++c) {
                    if (same_matrix(ctx.ent_classes[c], state)) {
                        id = static_cast<int>(c);
                        break;
                    }
                }
                if (id < 0) {
                    id = static_cast<int>(ctx.ent_classes.size());
                    ctx.ent_classes.push_back(state);
                }
                ctx.class_of[ia][ib] = id;
            }
        }
    }
    return ctx;
}

Feasibility decide_problem(const Context& ctx, const DecodingProblem& prob) {
    if (ctx.comp == Composition::TypeI) {
        return decide(generator_cone_problem(ctx.gens, prob));
    }
    return decide(facet_cone_problem(ctx.model, prob));
}

using TargetGrid = std::array<std::array<int, 4>, 4>;

TargetGrid target_grid(const boolfn::DualLayerTask& task) {
    TargetGrid grid{};
    for (std::uint32_t x = 0; x < 4; ++x) {
        for (std::uint32_t y = 0; y < 4; ++y) {
            grid[x][y] = boolfn::evaluate_task(task, x, y);
        }
    }
    return grid;
}

struct GridKey {
    std::array<std::uint64_t, 3> v{};
    bool operator==(const GridKey&) const = default;
};

struct GridKeyHash {
    std::size_t operator()(const GridKey& k) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::uint64_t x : k.v) h = rng::mix64(h ^ x);
        return static_cast<std::size_t>(h);
    }
};

// Verdict memo shared across one worker's tasks for the entangled sweep,
// keyed by the base-3 digest of per-class targets (task independent).
struct EntMemo {
    bool use_flat = false;
    std::vector<std::int8_t> flat;
    std::unordered_map<std::uint64_t, std::int8_t> map;

    void init(std::size_t key_space) {
        use_flat = key_space <= (1u << 22);
        if (use_flat) flat.assign(key_space, -1);
    }
    int get(std::uint64_t key) const {
        if (use_flat) return flat[key];
        const auto it = map.find(key);
        return it == map.end() ? -1 : it->second;
    }
    void put(std::uint64_t key, std::int8_t v) {
        if (use_flat) {
            flat[key] = v;
        } else {
            map.emplace(key, v);
        }
    }
};

struct WorkerState {
    EntMemo ent_memo;
    // Product-sweep verdicts, keyed by the packed cell-target grid; the key
    // already encodes everything the LP sees, so tasks can share entries.
    std::unordered_map<GridKey, std::int8_t, GridKeyHash> prod_memo;
};

// Sweeps vertex encodings a, b : inputs -> Z_n with a(0) = b(0) = 0; the
// dihedral symmetry of the effect cone makes the pinning loss-free, and
// extreme-point encodings are exhaustive because a perfect mixed encoding
// forces perfection on every component.
void sweep_product(const Context& ctx, WorkerState& ws, const TargetGrid& grid,
                   TaskSweepResult& out, bool stop_on_feasible) {
    const int n = ctx.model.n;
    auto& memo = ws.prod_memo;
    std::vector<std::int8_t> cells(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> touched;
    touched.reserve(16);
    std::array<int, 4> a{};
    std::array<int, 4> b{};

    auto process = [&]() -> bool {  // true = stop the whole sweep
        ++out.assignments_checked;
        touched.clear();
        bool conflict = false;
        for (int x = 0; x < 4 && !conflict; ++x) {
            for (int y = 0; y < 4; ++y) {
                const int cell = a[x] * n + b[y];
                const int t = grid[x][y];
                if (cells[cell] < 0) {
                    cells[cell] = static_cast<std::int8_t>(t);
                    touched.push_back(cell);
                } else if (cells[cell] != t) {
                    conflict = true;
                    break;
                }
            }
        }
        std::int8_t verdict = 0;
        if (!conflict) {
            GridKey key;
            for (int cell = 0; cell < n * n; ++cell) {
                const std::uint64_t digit =
                    cells[cell] < 0 ? 0u
                                    : static_cast<std::uint64_t>(cells[cell]) + 1u;
                key.v[cell >> 5] |= digit << (2 * (cell & 31));
            }
            const auto it = memo.find(key);
            if (it != memo.end()) {
                verdict = it->second;
            } else {
                DecodingProblem prob;
                for (int cell : touched) {
                    prob.states.push_back(polygon::product_state(
                        ctx.model.pure_states[cell / n],
                        ctx.model.pure_states[cell % n]));
                    prob.targets.push_back(cells[cell]);
                }
                const Feasibility f = decide_problem(ctx, prob);
                verdict = f == Feasibility::Feasible
                              ? 1
                              : (f == Feasibility::Indeterminate ? 2 : 0);
                memo.emplace(key, verdict);
            }
        }
        for (int cell : touched) cells[cell] = -1;
        if (verdict == 1) {
            ++out.feasible;
            if (stop_on_feasible) return true;
        } else if (verdict == 2) {
            ++out.indeterminate;
        }
        return false;
    };

    for (a[1] = 0; a[1] < n; ++a[1])
        for (a[2] = 0; a[2] < n; ++a[2])
            for (a[3] = 0; a[3] < n; ++a[3])
                for (b[1] = 0; b[1] < n; ++b[1])
                    for (b[2] = 0; b[2] < n; ++b[2])
                        for (b[3] = 0; b[3] < n; ++b[3]) {
                            if (process()) return;
                        }
}

// Sweeps local transform encodings over the shared entangled state, both
// parties' input-0 transform pinned to the identity by the same symmetry
// argument.
void sweep_entangled(const Context& ctx, WorkerState& ws,
                     const TargetGrid& grid, TaskSweepResult& out,
                     bool stop_on_feasible) {
    const int m = 2 * ctx.model.n;
    const int classes = static_cast<int>(ctx.ent_classes.size());
    std::vector<std::int8_t> cls_target(classes, -1);
    std::vector<int> touched;
    touched.reserve(16);
    std::array<int, 4> a{};
    std::array<int, 4> b{};

    auto process = [&]() -> bool {
        ++out.assignments_checked;
        touched.clear();
        bool conflict = false;
        for (int x = 0; x < 4 && !conflict; ++x) {
            const auto& row = ctx.class_of[a[x]];
            for (int y = 0; y < 4; ++y) {
                const int c = row[b[y]];
                const int t = grid[x][y];
                if (cls_target[c] < 0) {
                    cls_target[c] = static_cast<std::int8_t>(t);
                    touched.push_back(c);
                } else if (cls_target[c] != t) {
                    conflict = true;
                    break;
                }
            }
        }
        std::int8_t verdict = 0;
        if (!conflict) {
            std::uint64_t key = 0;
            for (int c : touched) {
                key += (static_cast<std::uint64_t>(cls_target[c]) + 1u) *
                       ctx.pow3[static_cast<std::size_t>(c)];
            }
            int cached = ws.ent_memo.get(key);
            if (cached < 0) {
                DecodingProblem prob;
                for (int c : touched) {
                    prob.states.push_back(ctx.ent_classes[c]);
                    prob.targets.push_back(cls_target[c]);
                }
                const Feasibility f =
                    decide(generator_cone_problem(ctx.gens, prob));
                cached = f == Feasibility::Feasible
                             ? 1
                             : (f == Feasibility::Indeterminate ? 2 : 0);
                ws.ent_memo.put(key, static_cast<std::int8_t>(cached));
            }
            verdict = static_cast<std::int8_t>(cached);
        }
        for (int c : touched) cls_target[c] = -1;
        if (verdict == 1) {
            ++out.feasible;
            if (stop_on_feasible) return true;
        } else if (verdict == 2) {
            ++out.indeterminate;
        }
        return false;
    };

    for (a[1] = 0; a[1] < m; ++a[1])
        for (a[2] = 0; a[2] < m; ++a[2])
            for (a[3] = 0; a[3] < m; ++a[3])
                for (b[1] = 0; b[1] < m; ++b[1])
                    for (b[2] = 0; b[2] < m; ++b[2])
                        for (b[3] = 0; b[3] < m; ++b[3]) {
                            if (process()) return;
                        }
}

Mat3 outer_product(const Vec3& a, const Vec3& b) {
    Mat3 m{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[3 * r + c] = a[r] * b[c];
    }
    return m;
}

// LP-optimal expected agreement (correct cells out of 16) for a fixed set of
// encoded states with 1/0 multiplicities, maximized over valid decoders.
// Returns the fractional agreement (-1 when the solve fails) and the
// optimal decoder effect.
std::pair<double, Mat3> max_agreement_solve(
    const Context& ctx, const std::vector<Mat3>& states,
    const std::vector<std::pair<int, int>>& weights) {
    double constant = 0.0;
    for (const auto& w : weights) constant += w.second;
    DecodingProblem empty;
    lp::Problem<double> p;
    if (ctx.comp == Composition::TypeI) {
        p = generator_cone_problem(ctx.gens, empty);
        const int g_count = static_cast<int>(ctx.gens.size());
        p.objective.assign(p.num_vars, 0.0);
        for (std::size_t s = 0; s < states.size(); ++s) {
            const double w = weights[s].first - weights[s].second;
            if (w == 0.0) continue;
            for (int ga = 0; ga < g_count; ++ga) {
                for (int gb = 0; gb < g_count; ++gb) {
                    p.objective[ga * g_count + gb] +=
                        w * bilinear(ctx.gens[ga], states[s], ctx.gens[gb]);
                }
            }
        }
    } else {
        p = facet_cone_problem(ctx.model, empty);
        p.objective.assign(18, 0.0);
        for (std::size_t s = 0; s < states.size(); ++s) {
            const double w = weights[s].first - weights[s].second;
            for (int j = 0; j < 9; ++j) {
                p.objective[j] += w * states[s][j];
                p.objective[9 + j] -= w * states[s][j];
            }
        }
    }
    const auto sol = lp::solve(p, kLpEps);
    if (sol.status != lp::Status::Optimal) return {-1.0, Mat3{}};
    Mat3 decoder{};
    if (ctx.comp == Composition::TypeI) {
        const int g_count = static_cast<int>(ctx.gens.size());
        for (int ga = 0; ga < g_count; ++ga) {
            for (int gb = 0; gb < g_count; ++gb) {
                const double lam = sol.x[ga * g_count + gb];
                if (lam == 0.0) continue;
                const Mat3 m = outer_product(ctx.gens[ga], ctx.gens[gb]);
                for (int j = 0; j < 9; ++j) decoder[j] += lam * m[j];
            }
        }
    } else {
        for (int j = 0; j < 9; ++j) decoder[j] = sol.x[j] - sol.x[9 + j];
    }
    return {(sol.objective_value + constant) / 16.0, decoder};
}

// Collects the canonical product encoding (input index -> vertex) as
// deduplicated states with 1/0 multiplicities over the 16 input pairs.
void collect_product_canonical(const Context& ctx, const TargetGrid& grid,
                               std::vector<Mat3>& states,
                               std::vector<std::pair<int, int>>& weights) {
    const int n = ctx.model.n;
    std::unordered_map<int, std::size_t> slot;
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            const int cell = (x % n) * n + (y % n);
            auto it = slot.find(cell);
            if (it == slot.end()) {
                it = slot.emplace(cell, states.size()).first;
                states.push_back(polygon::product_state(
                    ctx.model.pure_states[cell / n],
                    ctx.model.pure_states[cell % n]));
                weights.emplace_back(0, 0);
            }
            (grid[x][y] ? weights[it->second].first
                        : weights[it->second].second)++;
        }
    }
}

// Agreement for the canonical dense encodings: input index -> vertex (and,
// for TypeI, input index -> rotation on the shared state).
double canonical_max_agreement(const Context& ctx, const TargetGrid& grid) {
    const int n = ctx.model.n;
    std::vector<Mat3> states;
    std::vector<std::pair<int, int>> weights;
    collect_product_canonical(ctx, grid, states, weights);
    double best = max_agreement_solve(ctx, states, weights).first;
    if (ctx.comp == Composition::TypeI) {
        states.clear();
        weights.clear();
        std::unordered_map<int, std::size_t> slot;
        for (int x = 0; x < 4; ++x) {
            for (int y = 0; y < 4; ++y) {
                const int c = ctx.class_of[x % n][y % n];
                auto it = slot.find(c);
                if (it == slot.end()) {
                    it = slot.emplace(c, states.size()).first;
                    states.push_back(ctx.ent_classes[c]);
                    weights.emplace_back(0, 0);
                }
                (grid[x][y] ? weights[it->second].first
                            : weights[it->second].second)++;
            }
        }
        best = std::max(best, max_agreement_solve(ctx, states, weights).first);
    }
    return best;
}

TaskSweepResult sweep_task(const Context& ctx, WorkerState& ws,
                           const boolfn::DualLayerTask& task) {
    TaskSweepResult result;
    result.task = task;
    result.task_trivial = boolfn::matches_triviality_criteria(task);
    const TargetGrid grid = target_grid(task);
    sweep_product(ctx, ws, grid, result, /*stop_on_feasible=*/true);
    if (ctx.comp == Composition::TypeI && result.feasible == 0) {
        sweep_entangled(ctx, ws, grid, result, /*stop_on_feasible=*/true);
    }
    result.max_agreement = result.feasible > 0
                               ? 1.0
                               : canonical_max_agreement(ctx, grid);
    return result;
}

}  // namespace

const char* feasibility_name(Feasibility f) {
    switch (f) {
        case Feasibility::Feasible: return "feasible";
        case Feasibility::Infeasible: return "infeasible";
        default: return "indeterminate";
    }
}

Feasibility perfect_decoding_feasible(const PolygonModel& model,
                                      Composition comp,
                                      const DecodingProblem& problem) {
    if (problem.states.size() != problem.targets.size()) {
        throw std::invalid_argument("decoding problem size mismatch");
    }
    for (int t : problem.targets) {
        if (t != 0 && t != 1) {
            throw std::invalid_argument("decoding targets must be 0 or 1");
        }
    }
    if (comp == Composition::TypeI) {
        return decide(generator_cone_problem(effect_generators(model), problem));
    }
    return decide(facet_cone_problem(model, problem));
}

NoGoReport verify_no_go(int n, Composition comp,
                        const std::optional<boolfn::DualLayerTask>& only_task,
                        int jobs) {
    if (n < 4 || n > 9) {
        throw std::domain_error("no-go sweeps support 4 <= n <= 9");
    }
    const Context ctx = build_context(n, comp);
    std::vector<boolfn::DualLayerTask> tasks;
    if (only_task.has_value()) {
        tasks.push_back(*only_task);
    } else {
        for (const auto& task : boolfn::all_two_bit_tasks()) {
            if (!boolfn::matches_triviality_criteria(task)) {
                tasks.push_back(task);
            }
        }
    }

    NoGoReport report;
    report.n = n;
    report.composition = comp;
    report.tasks.resize(tasks.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        WorkerState ws;
        if (comp == Composition::TypeI) {
            ws.ent_memo.init(ctx.pow3[ctx.ent_classes.size()]);
        }
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            report.tasks[i] = sweep_task(ctx, ws, tasks[i]);
        }
    };

    int workers = jobs > 0
                      ? jobs
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers,
                                        static_cast<int>(tasks.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    report.all_nontrivial_infeasible = true;
    for (const auto& r : report.tasks) {
        report.total_indeterminate += r.indeterminate;
        if (!r.task_trivial && r.feasible > 0) {
            report.all_nontrivial_infeasible = false;
        }
    }
    return report;
}

double verify_odd_type1_positivity(int n) {
    if (n < 3 || n % 2 == 0) {
        throw std::domain_error("positivity scan expects odd n >= 3");
    }
    const PolygonModel model = polygon::build_polygon(n);
    const std::vector<Vec3>& effs = model.complement_effects;
    double min_p = 1.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            for (int p = -1; p <= 1; p += 2) {
                for (int q = -1; q <= 1; q += 2) {
                    const Mat3 state = polygon::entangled_state(n, k, l, p, q);
                    for (const Vec3& ea : effs) {
                        for (const Vec3& eb : effs) {
                            min_p = std::min(min_p, bilinear(ea, state, eb));
                        }
                    }
                }
            }
        }
    }
    return min_p;
}

bool verify_type2_click_table(int n) {
    if (n < 3 || n % 2 == 0) {
        throw std::domain_error("the click table applies to odd n >= 3");
    }
    const PolygonModel model = polygon::build_polygon(n);
    const Mat3 e00 = polygon::entangled_effect(n, 0, 0, +1, +1);
    const int up = (n + 1) / 2;
    const int down = (n - 1) / 2;
    for (int k = 0; k < n; ++k) {
        for (int s = 0; s < n; ++s) {
            const double p = polygon::pairing(
                e00, polygon::product_state(model.pure_states[k],
                                            model.pure_states[s]));
            const bool clicks = std::abs(p - 1.0) <= kSharpTol;
            const bool blocked = std::abs(p) <= kSharpTol;
            const bool expect_click = k == s;
            const bool expect_block =
                k == mod_n(s + up, n) || k == mod_n(s + down, n);
            if (clicks != expect_click || blocked != expect_block) {
                return false;
            }
        }
    }
    return true;
}

double verify_even_formulas(int n) {
    if (n < 4 || n % 2 != 0) {
        throw std::domain_error("sector formulas apply to even n >= 4");
    }
    const PolygonModel model = polygon::build_polygon(n);
    const Mat3 paired = polygon::clubbed_effect(model, 0, 0);
    const double r2 = 1.0 / std::cos(kPi / n);
    const double step = 2.0 * kPi / n;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const std::array<std::pair<std::array<int, 2>, double>, 4> rows{{
                {{+1, +1}, 0.5 * (1.0 + r2 * std::cos(kPi / n - step * (k - l)))},
                {{-1, -1}, 0.5 * (1.0 + r2 * std::cos(kPi / n + step * (k - l)))},
                {{+1, -1}, 0.5 * (1.0 + r2 * std::cos(kPi / n + step * (k + l)))},
                {{-1, +1},
                 0.5 * (1.0 + r2 * std::cos(3.0 * kPi / n + step * (k + l)))},
            }};
            for (const auto& [pq, predicted] : rows) {
                const double direct = polygon::pairing(
                    paired, polygon::entangled_state(n, k, l, pq[0], pq[1]));
                worst = std::max(worst, std::abs(direct - predicted));
            }
        }
    }
    return worst;
}

bool verify_even_condition_tables(int n) {
    if (n < 4 || n % 2 != 0) {
        throw std::domain_error("condition tables apply to even n >= 4");
    }
    const PolygonModel model = polygon::build_polygon(n);
    const Mat3 paired = polygon::clubbed_effect(model, 0, 0);
    const int h = n / 2;

    // prob[pi][qi][k][l] with pi/qi = 0 for +1 and 1 for -1.
    std::array<std::array<std::vector<double>, 2>, 2> prob;
    for (int pi = 0; pi < 2; ++pi) {
        for (int qi = 0; qi < 2; ++qi) {
            prob[pi][qi].assign(static_cast<std::size_t>(n) * n, 0.0);
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    prob[pi][qi][static_cast<std::size_t>(k) * n + l] =
                        polygon::pairing(paired,
                                         polygon::entangled_state(
                                             n, k, l, pi == 0 ? +1 : -1,
                                             qi == 0 ? +1 : -1));
                }
            }
        }
    }

    // Sector order: (+,+), (-,-), (+,-), (-,+).
    auto predicted = [&](int sector, int k, int l) -> std::pair<bool, bool> {
        switch (sector) {
            case 0:
                return {k == l || k == mod_n(l + 1, n),
                        k == mod_n(l + h, n) || k == mod_n(l + h + 1, n)};
            case 1:
                return {k == l || k == mod_n(l + n - 1, n),
                        k == mod_n(l + h, n) || k == mod_n(l + h - 1, n)};
            case 2:
                return {k == mod_n(-l, n) || k == mod_n(-l + n - 1, n),
                        k == mod_n(-l + h, n) || k == mod_n(-l + h - 1, n)};
            default:
                return {k == mod_n(-l + n - 1, n) ||
                            k == mod_n(-l + 2 * (n - 1), n),
                        k == mod_n(-l + h - 1, n) || k == mod_n(-l + h - 2, n)};
        }
    };
    const std::array<std::array<int, 2>, 4> sector_signs{{
        {0, 0}, {1, 1}, {0, 1}, {1, 0}}};
    for (int sector = 0; sector < 4; ++sector) {
        const auto [pi, qi] = sector_signs[sector];
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                const double p =
                    prob[pi][qi][static_cast<std::size_t>(k) * n + l];
                const bool clicks = std::abs(p - 1.0) <= kSharpTol;
                const bool blocked = std::abs(p) <= kSharpTol;
                const auto [expect_click, expect_block] = predicted(sector, k, l);
                if (clicks != expect_click || blocked != expect_block) {
                    return false;
                }
            }
        }
    }

    // Decoding-layout witness: crossing two index pairs inside the canonical
    // sector arrangement (+,+)/(-,-) against (+,-)/(-,+) must realize at
    // least one all-sharp quadruple with a 2:2 click split.
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int k2 = 0; k2 < n; ++k2)
                for (int l2 = 0; l2 < n; ++l2) {
                    const std::array<double, 4> ps{
                        prob[0][0][static_cast<std::size_t>(k) * n + l],
                        prob[1][1][static_cast<std::size_t>(k2) * n + l2],
                        prob[0][1][static_cast<std::size_t>(k) * n + l2],
                        prob[1][0][static_cast<std::size_t>(k2) * n + l]};
                    bool sharp = true;
                    int ones = 0;
                    for (double p : ps) {
                        if (std::abs(p - 1.0) <= kSharpTol) {
                            ++ones;
                        } else if (std::abs(p) > kSharpTol) {
                            sharp = false;
                            break;
                        }
                    }
                    if (sharp && ones == 2) return true;
                }
    return false;
}

bool verify_product_only_matches_classical(int n, int jobs) {
    if (n < 4 || n > 9) {
        throw std::domain_error("product-only comparison supports 4 <= n <= 9");
    }
    const Context ctx = build_context(n, Composition::TypeI);
    const auto tasks = boolfn::all_two_bit_tasks();
    std::vector<std::int8_t> agree(tasks.size(), 0);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        WorkerState ws;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const auto verdict = classical::classify_triviality(tasks[i]);
            const bool expect =
                verdict.verdict != classical::Verdict::Nontrivial;
            TaskSweepResult r;
            sweep_product(ctx, ws, target_grid(tasks[i]), r,
                          /*stop_on_feasible=*/true);
            const bool found = r.feasible > 0;
            agree[i] = (r.indeterminate == 0 && found == expect) ? 1 : 0;
        }
    };
    int workers = jobs > 0
                      ? jobs
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers,
                                        static_cast<int>(tasks.size())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return std::all_of(agree.begin(), agree.end(),
                       [](std::int8_t v) { return v == 1; });
}

bool symmetry_reduction_spot_check(int n, Composition comp,
                                   std::uint64_t seed, int rounds) {
    const PolygonModel model = polygon::build_polygon(n);
    auto rng = rng::CounterRng::for_stream(seed, 0);
    for (int round = 0; round < rounds; ++round) {
        DecodingProblem prob;
        const int count = 3 + static_cast<int>(rng.next_below(4));
        for (int c = 0; c < count; ++c) {
            Mat3 state;
            if (comp == Composition::TypeI && rng.next_below(2) == 1) {
                state = polygon::entangled_state(
                    n, static_cast<int>(rng.next_below(n)),
                    static_cast<int>(rng.next_below(n)),
                    rng.next_below(2) == 0 ? +1 : -1,
                    rng.next_below(2) == 0 ? +1 : -1);
            } else {
                state = polygon::product_state(
                    model.pure_states[rng.next_below(n)],
                    model.pure_states[rng.next_below(n)]);
            }
            bool duplicate = false;
            for (const Mat3& seen : prob.states) {
                if (same_matrix(seen, state)) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;
            prob.states.push_back(state);
            prob.targets.push_back(static_cast<int>(rng.next_below(2)));
        }
        const Feasibility before = perfect_decoding_feasible(model, comp, prob);

        const auto& ta = model.transforms[rng.next_below(2 * n)];
        const auto& tb = model.transforms[rng.next_below(2 * n)];
        DecodingProblem moved;
        moved.targets = prob.targets;
        for (const Mat3& s : prob.states) {
            moved.states.push_back(polygon::local_transform_bipartite(ta, tb, s));
        }
        const Feasibility after = perfect_decoding_feasible(model, comp, moved);
        if (before != after) return false;
    }
    return true;
}

CanonicalStrategy canonical_polygon_strategy(int n, Composition comp,
                                             const boolfn::DualLayerTask& task) {
    if (task.n != 2) {
        throw std::invalid_argument("canonical strategy requires 2-bit tasks");
    }
    const Context ctx = build_context(n, comp);
    const TargetGrid grid = target_grid(task);
    std::vector<Mat3> states;
    std::vector<std::pair<int, int>> weights;
    collect_product_canonical(ctx, grid, states, weights);
    const auto [agreement, decoder] = max_agreement_solve(ctx, states, weights);
    if (agreement < 0.0) {
        throw std::runtime_error("agreement optimization did not converge");
    }
    CanonicalStrategy strategy;
    strategy.decoder = decoder;
    strategy.agreement = agreement;
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            const double click = polygon::pairing(
                decoder,
                polygon::product_state(ctx.model.pure_states[x % n],
                                       ctx.model.pure_states[y % n]));
            const double clamped = std::min(1.0, std::max(0.0, click));
            strategy.success[x][y] = grid[x][y] ? clamped : 1.0 - clamped;
        }
    }
    return strategy;
}

}  // namespace dclc::nogo
