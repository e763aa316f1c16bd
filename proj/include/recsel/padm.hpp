#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recsel/conic.hpp"
#include "recsel/types.hpp"

namespace recsel {

enum class FormulationKind { plain, frobenius, trace };

struct Formulation {
    FormulationKind kind = FormulationKind::frobenius;
    double lambda_p = 10.0;  // frobenius regularization weights
    double lambda_q = 10.0;
    double tau_p = 0.0;  // trace caps; 0 means |I(u)|
    double tau_q = 0.0;
};

// One user's selection instance.
struct UserProblem {
    ItemList candidates;
    Vector mu;     // predicted means over candidates
    Matrix sigma;  // PSD covariance over candidates
    int top_n = 0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    Formulation formulation;

    Index n() const { return mu.size(); }
    void validate() const;
};

enum class PadmInit { eq7, topk_spread };

struct PadmSettings {
    double eps_in = 1e-4;
    double eps_out = 1e-4;
    double theta = 10.0;
    double gamma0 = 1e-4;
    int max_outer = 12;
    int max_inner = 50;
    PadmInit init = PadmInit::topk_spread;
    ConicSettings conic;
};

enum class PadmStatus { converged, outer_cap, inner_stall };

struct PadmTrace {
    struct Step {
        int outer = 0;
        int inner = 0;
        double gamma = 0.0;
        double f = 0.0;      // plain dual objective f(X)
        double f_pen = 0.0;  // maximized objective minus gamma * l1 gap
        double l1_gap = 0.0;
        double step_change = 0.0;  // max-norm change of all blocks
        double res_primal = 0.0;
        double res_dual = 0.0;
    };
    std::vector<Step> steps;
    std::vector<double> gammas;  // per outer round
    PadmStatus status = PadmStatus::outer_cap;
};

struct PadmResult {
    Selection z;
    DualIterate X;
    PadmTrace trace;
};

struct WorstCaseResult {
    double value = 0.0;
    ConicStatus status = ConicStatus::max_iter;
    int iterations = 0;
};

struct SelectResult {
    Selection z;
    double value = 0.0;
};

double dual_objective(const DualIterate& X, const UserProblem& prob);

// Indicator of the N largest entries of x_bar, ties to the lowest index.
Selection update_z(const Vector& x_bar, int top_n);

// Starting pair (X0, z0). eq7 uses the closed-form feasible tuple with the
// first-N indicator; topk_spread puts N/10 on the ten highest-mean items
// (N/|I(u)| on all of them when fewer than ten) and takes z0 as its top-N.
std::pair<DualIterate, Selection> initial_point(const UserProblem& prob,
                                                PadmInit mode);

PadmResult padm_solve(const UserProblem& prob, const PadmSettings& settings);

// Certified worst-case expected rating sum of a fixed selection: the dual
// solved with x pinned to z, no penalty, no regularization.
WorstCaseResult worst_case_value(const Selection& z, const UserProblem& prob,
                                 double tol = 1e-6, int max_iter = 20000);

// Enumerates all N-subsets (guard: at most 1e5) and maximizes
// worst_case_value; ties keep the lexicographically first subset.
SelectResult brute_force_select(const UserProblem& prob, double tol = 1e-6);

ConicProblem make_conic_problem(const UserProblem& prob);

void write_trace_csv(const PadmTrace& trace, const std::string& path);

}  // namespace recsel
