#pragma once

#include <optional>
#include <string>

#include "recsel/types.hpp"

namespace recsel {

// Continuous block of the dual selection problem.
struct DualIterate {
    Vector p, q, x;
    Matrix P, Q;
    double r = 0.0;
    double s = 0.0;

    static DualIterate zero(Index n);
};

// Concave maximization solved for each user and penalty anchor:
//
//   maximize  (mu mu' - kappa2 Sigma) . Q - Sigma . P + 2 mu'p - kappa1 r - s
//             - lambda_p ||P||_F^2 - lambda_q ||Q||_F^2 - gamma ||x - z_bar||_1
//   s.t.      p = -q/2 - Q mu
//             [P p; p' r] >= 0,   [Q (q+x)/2; . s] >= 0
//             box_lo <= x <= box_hi
//             optional: tr(P) <= tau_p, tr(Q) <= tau_q, f(X) >= f_lower
//
// The L1 term is the exact penalty of the copy constraint x = z_bar; its
// epigraph (auxiliary t) reformulation is handled through the proximal step
// of the splitting scheme, which yields the same optimal set.
struct ConicProblem {
    Vector mu;
    Matrix sigma;  // PSD
    double kappa1 = 0.0;
    double kappa2 = 0.0;

    double gamma = 0.0;
    Vector z_bar;  // penalty anchor; empty means zero vector

    double lambda_p = 0.0;
    double lambda_q = 0.0;
    std::optional<double> tau_p;
    std::optional<double> tau_q;
    std::optional<double> f_lower;

    Vector box_lo, box_hi;  // empty means [0, 1]^n

    Index n() const { return mu.size(); }
    Matrix a_hat() const;  // mu mu' - kappa2 Sigma
    void validate() const;
};

struct ConicSettings {
    double tol_primal = 1e-6;
    double tol_rel = 1e-6;
    int max_iter = 20000;
    double step_parameter = 1.0;  // initial splitting penalty rho
    // Returned x is nudged off active box bounds by about this amount,
    // scaled by the inverse bound multiplier, mirroring how interior-point
    // solvers report near-active coordinates. Keeps sort-based consumers
    // stable. Set to 0 to disable.
    double interior_eps = 1e-7;
    int adapt_interval = 25;
    int verbose = 0;  // print progress to stderr every `verbose` iterations
};

enum class ConicStatus { converged, max_iter, infeasible_suspect };

struct ConicSolution {
    DualIterate X;
    double objective = 0.0;        // value of the maximized objective
    double objective_plain = 0.0;  // f(X) without regularizers or penalty
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    ConicStatus status = ConicStatus::max_iter;
};

struct FeasibilityReport {
    bool equality_ok = false;
    bool psd1_ok = false;
    bool psd2_ok = false;
    bool box_ok = false;
    bool nonneg_ok = false;
    bool trace_ok = true;
    bool cut_ok = true;
    double equality_violation = 0.0;  // max |p + q/2 + Q mu|
    double psd1_min_eig = 0.0;
    double psd2_min_eig = 0.0;
    double box_violation = 0.0;
    double nonneg_violation = 0.0;
    double trace_violation = 0.0;
    double cut_violation = 0.0;

    bool all_ok() const {
        return equality_ok && psd1_ok && psd2_ok && box_ok && nonneg_ok &&
               trace_ok && cut_ok;
    }
    std::string summary() const;
};

double dual_objective_plain(const DualIterate& X, const ConicProblem& prob);

FeasibilityReport check_feasibility(const DualIterate& X,
                                    const ConicProblem& prob, double tol);

// Lemma-style feasible starting point: p = -mu, q = 0, P = Q = I,
// r = mu'mu + 1, s = x'x/4 + 1, x clamped anchor (or box midpoint).
DualIterate feasible_point(const ConicProblem& prob);

// Operator-splitting solver with persistent state so that sequences of
// nearby problems (penalty sweeps, enumeration over anchors) warm start each
// other. Only gamma, z_bar and the box may change between solve() calls.
class ConicSolver {
  public:
    ConicSolver(ConicProblem prob, ConicSettings settings);
    ~ConicSolver();
    ConicSolver(ConicSolver&&) noexcept;
    ConicSolver& operator=(ConicSolver&&) noexcept;

    void set_gamma(double gamma);
    void set_anchor(const Vector& z_bar);
    void set_box(const Vector& lo, const Vector& hi);
    void warm_start(const DualIterate& X);

    ConicSolution solve();

    const ConicProblem& problem() const;

  private:
    struct Impl;
    Impl* impl_;
};

// One-shot convenience wrapper.
ConicSolution solve(const ConicProblem& prob, const ConicSettings& settings);

}  // namespace recsel
