#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Small dense linear programming core: two-phase primal simplex with Bland's
// rule over a generic scalar (double for the polygon sweeps, an exact
// rational type when the input data are rational).  All variables are
// nonnegative; rows are equalities or <= inequalities.  Infeasible results
// carry a Farkas certificate that callers can re-verify against the original
// data.

namespace dclc::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

enum class RowType { Equal, LessEqual };

template <typename S>
struct Problem {
    int num_vars = 0;
    std::vector<std::vector<S>> rows;  // each of length num_vars
    std::vector<S> rhs;
    std::vector<RowType> types;
    std::vector<S> objective;  // maximize objective . x; empty = feasibility
};

template <typename S>
struct Solution {
    Status status = Status::IterationLimit;
    std::vector<S> x;                 // structural values when feasible
    S objective_value{};
    S phase1_value{};                 // residual artificial mass after phase 1
    std::vector<S> farkas;            // row multipliers when infeasible
    bool farkas_verified = false;
};

namespace detail {

template <typename S>
S abs_of(const S& v) {
    return v < S(0) ? S(-v) : v;
}

}  // namespace detail

// Checks a Farkas certificate y for {rows(x) = / <= rhs, x >= 0}: y must
// satisfy y . a_j <= tol for every structural column j, y_i <= tol on
// <=-rows, and y . rhs > tol.  The certificate proves no feasible x exists.
template <typename S>
bool verify_farkas(const Problem<S>& p, const std::vector<S>& y,
                   const S& tol) {
    if (y.size() != p.rows.size()) return false;
    S dot_rhs{0};
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        if (p.types[i] == RowType::LessEqual && y[i] > tol) return false;
        dot_rhs += y[i] * p.rhs[i];
    }
    if (!(dot_rhs > tol)) return false;
    for (int j = 0; j < p.num_vars; ++j) {
        S acc{0};
        for (std::size_t i = 0; i < p.rows.size(); ++i) {
            acc += y[i] * p.rows[i][j];
        }
        if (acc > tol) return false;
    }
    return true;
}

template <typename S>
Solution<S> solve(const Problem<S>& p, const S& eps,
                  std::int64_t max_iterations = 500000) {
    const int m = static_cast<int>(p.rows.size());
    const int n = p.num_vars;
    if (static_cast<int>(p.rhs.size()) != m ||
        static_cast<int>(p.types.size()) != m) {
        throw std::invalid_argument("inconsistent problem dimensions");
    }

    // Column layout: structural | slacks (<=-rows) | artificials (all rows)
    // | rhs.  Rows are sign-normalized so every right-hand side is >= 0.
    int num_slack = 0;
    std::vector<int> slack_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (p.types[i] == RowType::LessEqual) slack_col[i] = num_slack++;
    }
    const int slack_base = n;
    const int art_base = n + num_slack;
    const int width = art_base + m + 1;
    const int rhs_col = width - 1;

    std::vector<std::vector<S>> tab(m, std::vector<S>(width, S(0)));
    std::vector<int> row_sign(m, 1);
    std::vector<int> basis(m, -1);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tab[i][j] = p.rows[i][j];
        if (slack_col[i] >= 0) tab[i][slack_base + slack_col[i]] = S(1);
        tab[i][rhs_col] = p.rhs[i];
        if (tab[i][rhs_col] < S(0)) {
            row_sign[i] = -1;
            for (int j = 0; j < width; ++j) tab[i][j] = -tab[i][j];
        }
        // Slack columns with a +1 entry seed the basis; everything else
        // starts on an artificial.
        if (slack_col[i] >= 0 && row_sign[i] == 1) {
            basis[i] = slack_base + slack_col[i];
        } else {
            basis[i] = art_base + i;
        }
        tab[i][art_base + i] = S(1);
    }

    std::vector<S> obj(width, S(0));  // reduced costs, minimization
    auto pivot = [&](int row, int col) {
        const S inv = tab[row][col];
        for (int j = 0; j < width; ++j) tab[row][j] = tab[row][j] / inv;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            const S factor = tab[i][col];
            if (factor == S(0)) continue;
            for (int j = 0; j < width; ++j) {
                tab[i][j] -= factor * tab[row][j];
            }
        }
        const S factor = obj[col];
        if (factor != S(0)) {
            for (int j = 0; j < width; ++j) obj[j] -= factor * tab[row][j];
        }
        basis[row] = col;
    };

    std::int64_t iterations = 0;
    std::vector<char> banned(width, 0);

    // Dantzig pricing with larger-pivot tie-breaks for numerical health; on
    // stalled progress (degenerate cycling) switch permanently to Bland's
    // rule, which terminates in exact arithmetic.  The objective-row value
    // obj[rhs_col] is nondecreasing in both phases, so it doubles as the
    // progress measure.
    auto run_simplex = [&]() -> Status {
        bool use_bland = false;
        int stall = 0;
        S last = obj[rhs_col];
        while (true) {
            int enter = -1;
            if (use_bland) {
                for (int j = 0; j < rhs_col; ++j) {
                    if (banned[j]) continue;
                    if (obj[j] < -eps) {
                        enter = j;
                        break;
                    }
                }
            } else {
                S best = -eps;
                for (int j = 0; j < rhs_col; ++j) {
                    if (banned[j]) continue;
                    if (obj[j] < best) {
                        best = obj[j];
                        enter = j;
                    }
                }
            }
            if (enter < 0) return Status::Optimal;
            int leave = -1;
            for (int i = 0; i < m; ++i) {
                if (tab[i][enter] > eps) {
                    if (leave < 0) {
                        leave = i;
                        continue;
                    }
                    const S lhs = tab[i][rhs_col] * tab[leave][enter];
                    const S rhs_v = tab[leave][rhs_col] * tab[i][enter];
                    if (lhs < rhs_v) {
                        leave = i;
                    } else if (lhs == rhs_v &&
                               (use_bland
                                    ? basis[i] < basis[leave]
                                    : tab[i][enter] > tab[leave][enter])) {
                        leave = i;
                    }
                }
            }
            if (leave < 0) return Status::Unbounded;
            pivot(leave, enter);
            if (++iterations > max_iterations) {
                return Status::IterationLimit;
            }
            if (obj[rhs_col] > last + eps * (S(1) + detail::abs_of(last))) {
                last = obj[rhs_col];
                stall = 0;
            } else if (!use_bland && ++stall > 64 + 2 * (m + n)) {
                use_bland = true;
            }
        }
    };

    // ----- Phase 1: minimize the sum of artificials -----
    for (int i = 0; i < m; ++i) obj[art_base + i] = S(1);
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= art_base) {
            for (int j = 0; j < width; ++j) obj[j] -= tab[i][j];
        }
    }

    Solution<S> result;
    const Status phase1 = run_simplex();
    if (phase1 == Status::IterationLimit) {
        result.status = Status::IterationLimit;
        return result;
    }
    const S infeas = -obj[rhs_col];  // current sum of artificials
    result.phase1_value = infeas < S(0) ? S(0) : infeas;
    if (infeas > eps) {
        result.status = Status::Infeasible;
        // Dual values off the artificial columns: each started as the unit
        // column of its row with phase-1 cost one.
        result.farkas.resize(m);
        for (int i = 0; i < m; ++i) {
            const S y = S(1) - obj[art_base + i];
            result.farkas[i] = (row_sign[i] == 1) ? y : S(-y);
        }
        // Normalize for a scale-free tolerance check, then verify on the
        // caller's original data.
        S peak{0};
        for (const S& v : result.farkas) {
            const S a = detail::abs_of(v);
            if (a > peak) peak = a;
        }
        if (peak > S(0)) {
            std::vector<S> scaled(result.farkas);
            for (S& v : scaled) v = v / peak;
            result.farkas_verified = verify_farkas(p, scaled, eps);
            result.farkas = scaled;
        }
        return result;
    }

    // Remove artificials: pivot basic ones onto structural columns or drop
    // the (redundant) row from further pivoting by leaving it banned.
    for (int i = 0; i < m; ++i) {
        if (basis[i] < art_base) continue;
        int col = -1;
        for (int j = 0; j < art_base; ++j) {
            if (detail::abs_of(tab[i][j]) > eps) {
                col = j;
                break;
            }
        }
        if (col >= 0) pivot(i, col);
    }
    for (int j = art_base; j < rhs_col; ++j) banned[j] = 1;

    // ----- Phase 2: optimize the real objective, if any -----
    if (!p.objective.empty()) {
        if (static_cast<int>(p.objective.size()) != n) {
            throw std::invalid_argument("objective length mismatch");
        }
        for (int j = 0; j < width; ++j) obj[j] = S(0);
        for (int j = 0; j < n; ++j) obj[j] = -p.objective[j];  // maximize
        for (int i = 0; i < m; ++i) {
            if (basis[i] >= art_base) continue;  // redundant row, stays put
            const S c = obj[basis[i]];
            if (c != S(0)) {
                for (int j = 0; j < width; ++j) obj[j] -= c * tab[i][j];
            }
        }
        const Status phase2 = run_simplex();
        if (phase2 != Status::Optimal) {
            result.status = phase2;
            return result;
        }
    }

    result.status = Status::Optimal;
    result.x.assign(n, S(0));
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) result.x[basis[i]] = tab[i][rhs_col];
    }
    if (!p.objective.empty()) {
        S value{0};
        for (int j = 0; j < n; ++j) value += p.objective[j] * result.x[j];
        result.objective_value = value;
    }
    return result;
}

}  // namespace dclc::lp
