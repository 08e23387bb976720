#include "migratepack/improve.hpp"

#include <algorithm>
#include <set>

namespace migratepack {

void ImproveParams::validate(bool integral_alpha) const {
    if (alpha <= 0) throw ImproveError("alpha must be positive");
    if (delta <= 0 || delta > 1) throw ImproveError("delta must lie in (0,1]");
    if (var_factor != 1 && var_factor != 2) throw ImproveError("var_factor must be 1 or 2");
    if (integral_alpha && !rat_is_integer(alpha))
        throw ImproveError("alpha must be a positive integer for integral operations");
}

bool integral_feasible(const Lp& lp, const IntegralSolution& y) {
    LpSolution x;
    for (const auto& [i, v] : y.values) {
        if (v < 0) return false;
        x.set(i, Rational(v));
    }
    return lp_feasible(lp, x);
}

IntegralSolution ceil_of(const LpSolution& x) {
    IntegralSolution y;
    for (const auto& [i, v] : x.values) y.set(i, rat_ceil(v));
    return y;
}

long l1_distance(const IntegralSolution& a, const IntegralSolution& b) {
    long d = 0;
    std::set<int> keys;
    for (const auto& [i, v] : a.values) keys.insert(i);
    for (const auto& [i, v] : b.values) keys.insert(i);
    for (int i : keys) d += std::labs(a.at(i) - b.at(i));
    return d;
}

namespace {

LpSolution scaled(const LpSolution& x, const Rational& f) {
    LpSolution out;
    for (const auto& [i, v] : x.values) out.set(i, v * f);
    return out;
}

LpSolution plus(const LpSolution& a, const LpSolution& b) {
    LpSolution out = a;
    for (const auto& [i, v] : b.values) out.set(i, out.at(i) + v);
    return out;
}

LpSolution minus(const LpSolution& a, const LpSolution& b) {
    LpSolution out = a;
    for (const auto& [i, v] : b.values) out.set(i, out.at(i) - v);
    return out;
}

// Solves the residual LP with the incumbent support listed first: Bland's
// rule picks the smallest eligible index, so among equally good vertices the
// solver lands on configurations already in use. Optimality is unaffected.
LpSolution solve_preferring(const Lp& residual, const LpSolution& incumbent,
                            const Rational& rho, SolveMode mode) {
    std::vector<int> order;
    std::vector<char> preferred(residual.cols, 0);
    for (const auto& [j, v] : incumbent.values)
        if (j >= 0 && j < residual.cols && !preferred[j]) {
            order.push_back(j);
            preferred[j] = 1;
        }
    for (int j = 0; j < residual.cols; ++j)
        if (!preferred[j]) order.push_back(j);
    Lp permuted(residual.rows, residual.cols);
    permuted.b = residual.b;
    for (int i = 0; i < residual.rows; ++i)
        for (int c = 0; c < residual.cols; ++c) permuted.a[i][c] = residual.a[i][order[c]];
    LpSolution sol = solve_approx(permuted, rho, mode);
    LpSolution out;
    for (const auto& [c, v] : sol.values) out.set(order[c], v);
    return out;
}

// b - A x_fix, clamped at zero componentwise (A x_fix may overshoot rows that
// other columns already cover).
Lp residual_lp(const Lp& lp, const LpSolution& x_fix) {
    Lp out = lp;
    auto ax = lp_product(lp, x_fix);
    for (int i = 0; i < lp.rows; ++i) {
        Rational r = lp.b[i] - ax[i];
        out.b[i] = r > 0 ? r : Rational(0);
    }
    return out;
}

// Sorted support indices a_1..a_K of y with y_{a_1} <= ... <= y_{a_K},
// ties broken by ascending column index.
std::vector<int> support_sorted_by_value(const IntegralSolution& y) {
    std::vector<int> idx;
    idx.reserve(y.values.size());
    for (const auto& [i, v] : y.values) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return y.at(a) < y.at(b); });
    return idx;
}

void check_pairing(const LpSolution& x, const IntegralSolution& y) {
    if (x.support() != y.support())
        throw PreconditionViolated("x' and y' must share the same number of non-zero components");
    for (const auto& [i, v] : x.values) {
        long yi = y.at(i);
        if (yi == 0) throw PreconditionViolated("supports of x' and y' differ");
        if (Rational(yi) < v) throw PreconditionViolated("y'_i >= x'_i violated");
    }
}

IntegralSolution hat_y(const LpSolution& x2, const IntegralSolution& y_bar) {
    IntegralSolution out;
    std::set<int> keys;
    for (const auto& [i, v] : x2.values) keys.insert(i);
    for (const auto& [i, v] : y_bar.values) keys.insert(i);
    for (int i : keys) out.set(i, std::max(rat_ceil(x2.at(i)), y_bar.at(i)));
    return out;
}

std::map<int, Rational> gap(const IntegralSolution& y, const LpSolution& x) {
    std::map<int, Rational> z;
    std::set<int> keys;
    for (const auto& [i, v] : y.values) keys.insert(i);
    for (const auto& [i, v] : x.values) keys.insert(i);
    for (int i : keys) {
        Rational g = Rational(y.at(i)) - x.at(i);
        if (g < 0) throw ImproveError("negative gap between integral and fractional solution");
        if (g > 0) z[i] = g;
    }
    return z;
}

}  // namespace

LpSolution theorem1_witness(const Lp& lp, const LpSolution& x_prime, const LpSolution& x_opt,
                            const ImproveParams& p) {
    p.validate(false);
    Rational lin = x_opt.objective();
    if (p.alpha > p.delta * lin) throw AlphaTooLarge("alpha exceeds delta * LIN");
    Rational norm = x_prime.objective();
    if (norm != (Rational(1) + p.delta) * lin)
        throw PreconditionViolated("||x'||_1 must equal (1+delta) LIN");
    Rational beta = p.alpha * (Rational(1) / p.delta + 1) / norm;
    return plus(scaled(x_prime, Rational(1) - beta), scaled(x_opt, beta));
}

LpSolution improve_exact(const Lp& lp, const LpSolution& x_prime, const ImproveParams& p) {
    p.validate(false);
    if (p.var_factor != 1) throw ImproveError("improve_exact uses var_factor 1");
    Rational norm = x_prime.objective();
    Rational budget = p.alpha * (Rational(1) / p.delta + 1);
    if (norm < budget) throw BudgetTooSmall("||x'||_1 < alpha(1/delta+1)");
    LpSolution x_var = scaled(x_prime, budget / norm);
    LpSolution x_fix = minus(x_prime, x_var);
    LpSolution x_hat = solve_preferring(residual_lp(lp, x_fix), x_prime, 0, SolveMode::Exact);
    return plus(x_fix, x_hat);
}

LpSolution improve_approx(const Lp& lp, const LpSolution& x_prime, const ImproveParams& p,
                          SolveMode mode) {
    p.validate(false);
    if (p.var_factor != 2) throw ImproveError("improve_approx uses var_factor 2");
    Rational norm = x_prime.objective();
    Rational budget = 2 * p.alpha * (Rational(1) / p.delta + 1);
    if (norm < budget) throw BudgetTooSmall("||x'||_1 < 2 alpha(1/delta+1)");
    LpSolution x_var = scaled(x_prime, budget / norm);
    LpSolution x_fix = minus(x_prime, x_var);
    LpSolution x_hat = solve_preferring(residual_lp(lp, x_fix), x_prime, p.delta / 2, mode);
    LpSolution candidate = plus(x_fix, x_hat);
    if (candidate.objective() < norm) return candidate;
    return x_prime;
}

std::vector<int> prefix_under_threshold(const IntegralSolution& y, const Rational& threshold) {
    auto idx = support_sorted_by_value(y);
    std::vector<int> prefix;
    Rational sum = 0;
    for (int i : idx) {
        sum += y.at(i);
        if (sum > threshold) break;
        prefix.push_back(i);
    }
    return prefix;
}

IntegralSolution choose_budgeted_integral(const std::map<int, Rational>& z,
                                          const Rational& budget) {
    if (budget < 0) throw ImproveError("negative budget");
    std::vector<std::pair<int, long>> room;  // (column, floor(z_i))
    for (const auto& [i, v] : z) {
        if (v < 0) throw ImproveError("negative component in V(z) source");
        long f = rat_floor(v);
        if (f > 0) room.emplace_back(i, f);
    }
    std::stable_sort(room.begin(), room.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    long remaining = rat_floor(budget);
    IntegralSolution v;
    for (const auto& [i, f] : room) {
        if (remaining <= 0) break;
        long take = std::min(f, remaining);
        v.set(i, take);
        remaining -= take;
    }
    return v;
}

std::pair<LpSolution, IntegralSolution> improve_integral_min_reduction(
    const Lp& lp, const LpSolution& x_prime, const IntegralSolution& y_prime,
    const ImproveParams& p) {
    p.validate(true);
    for (const auto& [i, v] : x_prime.values)
        if (Rational(y_prime.at(i)) < v) throw PreconditionViolated("y'_i >= x'_i violated");

    // step 1: use existing slack if it covers alpha outright; no budget is
    // spent on this path
    IntegralSolution c = choose_budgeted_integral(gap(y_prime, x_prime), p.alpha);
    IntegralSolution y_bar = y_prime;
    for (const auto& [i, v] : c.values) y_bar.set(i, y_bar.at(i) - v);
    if (Rational(c.objective()) == p.alpha) return {x_prime, y_bar};

    Rational norm = x_prime.objective();
    Rational budget = p.alpha * (Rational(1) / p.delta + 1);
    if (norm < budget) throw BudgetTooSmall("||x'||_1 < alpha(1/delta+1)");

    // steps 2-4: exact re-solve of the variable part
    LpSolution x_var = scaled(x_prime, budget / norm);
    LpSolution x_fix = minus(x_prime, x_var);
    LpSolution x_hat = solve_preferring(residual_lp(lp, x_fix), x_prime, 0, SolveMode::Exact);
    LpSolution x2 = plus(x_fix, x_hat);

    // steps 5-7
    IntegralSolution y_hat = hat_y(x2, y_bar);
    IntegralSolution d = choose_budgeted_integral(gap(y_hat, x2), budget);
    IntegralSolution y2 = y_hat;
    for (const auto& [i, v] : d.values) y2.set(i, y2.at(i) - v);
    return {x2, y2};
}

std::pair<LpSolution, IntegralSolution> improve_integral_sparse(const Lp& lp,
                                                                const LpSolution& x_prime,
                                                                const IntegralSolution& y_prime,
                                                                const ImproveParams& p) {
    p.validate(true);
    Rational norm = x_prime.objective();
    Rational budget = p.alpha * (Rational(1) / p.delta + 1);
    if (norm < budget) throw BudgetTooSmall("||x'||_1 < alpha(1/delta+1)");
    check_pairing(x_prime, y_prime);
    Rational inv_delta = Rational(1) / p.delta;
    Rational threshold = Rational(lp.rows + 1) * (inv_delta + 2);
    if (Rational(y_prime.objective()) < threshold)
        throw PreconditionViolated("||y'||_1 < (m+1)(1/delta+2)");

    std::vector<int> prefix = prefix_under_threshold(y_prime, threshold);
    std::set<int> pre(prefix.begin(), prefix.end());

    // variable part takes the prefix entirely, plus the scaled share elsewhere
    LpSolution x_var = scaled(x_prime, budget / norm);
    for (int i : prefix) x_var.set(i, x_prime.at(i));
    LpSolution x_fix = minus(x_prime, x_var);
    IntegralSolution y_bar = y_prime;
    for (int i : prefix) y_bar.set(i, 0);

    LpSolution x_hat = solve_preferring(residual_lp(lp, x_fix), x_prime, 0, SolveMode::Exact);
    LpSolution x2 = plus(x_fix, x_hat);

    IntegralSolution y_hat = hat_y(x2, y_bar);
    IntegralSolution d =
        choose_budgeted_integral(gap(y_hat, x2), p.alpha * (inv_delta + 2) + lp.rows);
    IntegralSolution y2 = y_hat;
    for (const auto& [i, v] : d.values) y2.set(i, y2.at(i) - v);
    return {x2, y2};
}

std::pair<LpSolution, IntegralSolution> improve_paired(const Lp& lp, const LpSolution& x_prime,
                                                       const IntegralSolution& y_prime,
                                                       const ImproveParams& p, int extra_budget,
                                                       SolveMode mode) {
    p.validate(true);
    if (p.var_factor != 2) throw ImproveError("improve_paired uses var_factor 2");
    Rational norm = x_prime.objective();
    Rational inv_delta = Rational(1) / p.delta;
    Rational budget = 2 * p.alpha * (inv_delta + 1);
    if (norm < budget) throw BudgetTooSmall("||x'||_1 < 2 alpha(1/delta+1)");
    check_pairing(x_prime, y_prime);
    // ||y'|| >= (m+2)(1/delta+2) is an analysis precondition only: when the
    // whole support fits under the prefix threshold the algorithm still runs
    // and just zeroes everything it can.

    Rational d_target = 2 * p.alpha * (inv_delta + 2) + lp.rows + 1;

    LpSolution x_var = scaled(x_prime, budget / norm);
    LpSolution x_fix = minus(x_prime, x_var);
    LpSolution x_hat = solve_preferring(residual_lp(lp, x_fix), x_prime, p.delta / 2, mode);

    LpSolution x2;
    IntegralSolution y_hat;
    if (plus(x_fix, x_hat).objective() >= norm) {
        // keep x'; the d-reduction below still applies
        x2 = x_prime;
        y_hat = y_prime;
    } else {
        Rational threshold = Rational(lp.rows + 2) * (inv_delta + 2) + extra_budget;
        std::vector<int> prefix = prefix_under_threshold(y_prime, threshold);

        LpSolution x_fix_bar = x_fix;
        IntegralSolution y_bar = y_prime;
        LpSolution x_bar = x_hat;
        for (int i : prefix) {
            x_bar.set(i, x_bar.at(i) + x_fix.at(i));
            x_fix_bar.set(i, 0);
            y_bar.set(i, 0);
        }
        x_bar = reduce_support(lp, x_bar, lp.rows + 1);
        x2 = plus(x_fix_bar, x_bar);
        y_hat = hat_y(x2, y_bar);
    }

    IntegralSolution d = choose_budgeted_integral(gap(y_hat, x2), d_target);
    IntegralSolution y2 = y_hat;
    for (const auto& [i, v] : d.values) y2.set(i, y2.at(i) - v);
    return {x2, y2};
}

LpSolution sensitivity_transfer(const Lp& lp_old, const Lp& lp_new, const LpSolution& x_prime,
                                const Rational& delta) {
    lp_old.validate();
    lp_new.validate();
    if (lp_old.rows != lp_new.rows || lp_old.cols != lp_new.cols || lp_old.a != lp_new.a)
        throw PreconditionViolated("sensitivity transfer requires identical matrices");
    if (delta <= 0 || delta > 1) throw ImproveError("delta must lie in (0,1]");

    // c_i = max_j A_ij, argmax ties to the smallest column
    std::vector<Rational> c(lp_old.rows, Rational(0));
    std::vector<int> argmax(lp_old.rows, -1);
    for (int i = 0; i < lp_old.rows; ++i)
        for (int j = 0; j < lp_old.cols; ++j)
            if (lp_old.a[i][j] > c[i]) {
                c[i] = lp_old.a[i][j];
                argmax[i] = j;
            }

    Rational dist = 0;
    for (int i = 0; i < lp_old.rows; ++i) {
        if (lp_new.b[i] == lp_old.b[i]) continue;
        if (c[i] == 0) throw InfeasibleRow("rhs changed on an all-zero row");
        dist += abs(lp_new.b[i] - lp_old.b[i]) / c[i];
    }
    if (dist == 0) return x_prime;

    // raise case: grown rows are covered through their largest-entry column;
    // shrunk rows stay covered for free
    LpSolution x0 = x_prime;
    for (int i = 0; i < lp_old.rows; ++i) {
        if (lp_new.b[i] <= lp_old.b[i]) continue;
        int j = argmax[i];
        x0.set(j, x0.at(j) + (lp_new.b[i] - lp_old.b[i]) / c[i]);
    }

    Rational lin2 = solve_exact(lp_new).objective();
    if (lin2 == 0) return LpSolution{};
    Rational target = (Rational(1) + delta) * lin2;
    Rational norm = x0.objective();
    if (norm <= target) return x0;

    // Improve on the new LP by exactly the overshoot. With the effective
    // ratio delta_eff = ||x0||/LIN2 - 1, the variable-part budget
    // gap (1/delta_eff + 1) never exceeds ||x0|| and an exact re-solve of
    // the freed demand recovers at least the gap.
    Rational gap = norm - target;
    Rational delta_eff = norm / lin2 - 1;
    Rational budget = gap * (Rational(1) / delta_eff + 1);
    if (budget > norm) throw BudgetTooSmall("sensitivity transfer budget exceeds ||x0||");
    LpSolution x_var = scaled(x0, budget / norm);
    LpSolution x_fix = minus(x0, x_var);
    LpSolution x_hat = solve_exact(residual_lp(lp_new, x_fix));
    return plus(x_fix, x_hat);
}

}  // namespace migratepack
