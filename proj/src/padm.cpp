#include "recsel/padm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace recsel {

void UserProblem::validate() const {
    const Index dim = n();
    if (dim < 1) throw std::invalid_argument("UserProblem: empty mu");
    if (!candidates.empty() && static_cast<Index>(candidates.size()) != dim) {
        throw std::invalid_argument("UserProblem: candidates/mu mismatch");
    }
    if (sigma.rows() != dim || sigma.cols() != dim) {
        throw std::invalid_argument("UserProblem: sigma shape mismatch");
    }
    if (top_n < 1 || top_n > dim) {
        throw std::invalid_argument("UserProblem: N outside [1, |I(u)|]");
    }
    if (kappa1 < 0 || kappa2 < 0) {
        throw std::invalid_argument("UserProblem: negative ambiguity radius");
    }
    if (formulation.kind != FormulationKind::plain && kappa1 <= 0.0) {
        throw std::invalid_argument(
            "UserProblem: kappa1 > 0 required for the compact formulations");
    }
}

ConicProblem make_conic_problem(const UserProblem& prob) {
    ConicProblem cp;
    cp.mu = prob.mu;
    cp.sigma = prob.sigma;
    cp.kappa1 = prob.kappa1;
    cp.kappa2 = prob.kappa2;
    switch (prob.formulation.kind) {
        case FormulationKind::plain:
            break;
        case FormulationKind::frobenius:
            cp.lambda_p = prob.formulation.lambda_p;
            cp.lambda_q = prob.formulation.lambda_q;
            break;
        case FormulationKind::trace: {
            const double dim = static_cast<double>(prob.n());
            cp.tau_p = prob.formulation.tau_p > 0 ? prob.formulation.tau_p : dim;
            cp.tau_q = prob.formulation.tau_q > 0 ? prob.formulation.tau_q : dim;
            break;
        }
    }
    return cp;
}

double dual_objective(const DualIterate& X, const UserProblem& prob) {
    ConicProblem cp;
    cp.mu = prob.mu;
    cp.sigma = prob.sigma;
    cp.kappa1 = prob.kappa1;
    cp.kappa2 = prob.kappa2;
    return dual_objective_plain(X, cp);
}

namespace {

// Indices sorted by value descending, index ascending on ties.
std::vector<Index> ranked_indices(const Vector& values) {
    std::vector<Index> idx(values.size());
    std::iota(idx.begin(), idx.end(), Index{0});
    std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        if (values(a) != values(b)) return values(a) > values(b);
        return a < b;
    });
    return idx;
}

double regularized_objective(const DualIterate& X, const UserProblem& prob) {
    double f = dual_objective(X, prob);
    if (prob.formulation.kind == FormulationKind::frobenius) {
        f -= prob.formulation.lambda_p * X.P.squaredNorm() +
             prob.formulation.lambda_q * X.Q.squaredNorm();
    }
    return f;
}

double block_change(const DualIterate& a, const DualIterate& b,
                    const Selection& za, const Selection& zb) {
    double d = 0.0;
    d = std::max(d, (a.p - b.p).cwiseAbs().maxCoeff());
    d = std::max(d, (a.q - b.q).cwiseAbs().maxCoeff());
    d = std::max(d, (a.x - b.x).cwiseAbs().maxCoeff());
    d = std::max(d, (a.P - b.P).cwiseAbs().maxCoeff());
    d = std::max(d, (a.Q - b.Q).cwiseAbs().maxCoeff());
    d = std::max(d, std::abs(a.r - b.r));
    d = std::max(d, std::abs(a.s - b.s));
    d = std::max(d, (za - zb).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace

Selection update_z(const Vector& x_bar, int top_n) {
    const Index n = x_bar.size();
    if (top_n < 0 || top_n > n) {
        throw std::invalid_argument("update_z: N outside [0, n]");
    }
    Selection z = Selection::Zero(n);
    const auto idx = ranked_indices(x_bar);
    for (int i = 0; i < top_n; ++i) z(idx[i]) = 1.0;
    return z;
}

std::pair<DualIterate, Selection> initial_point(const UserProblem& prob,
                                                PadmInit mode) {
    prob.validate();
    const Index n = prob.n();
    const int N = prob.top_n;

    DualIterate X = DualIterate::zero(n);
    X.p = -prob.mu;
    X.P = Matrix::Identity(n, n);
    X.Q = Matrix::Identity(n, n);
    X.r = prob.mu.squaredNorm() + 1.0;
    X.s = 0.25 * N + 1.0;

    Selection z;
    if (mode == PadmInit::eq7) {
        X.x = Vector::Zero(n);
        X.x.head(N).setOnes();
        z = X.x;
    } else {
        const Index spread = std::min<Index>(10, n);
        const auto idx = ranked_indices(prob.mu);
        X.x = Vector::Zero(n);
        for (Index i = 0; i < spread; ++i) {
            X.x(idx[i]) = static_cast<double>(N) / static_cast<double>(spread);
        }
        z = update_z(X.x, N);
    }
    return {std::move(X), std::move(z)};
}

PadmResult padm_solve(const UserProblem& prob, const PadmSettings& settings) {
    prob.validate();
    if (settings.theta <= 1.0 || settings.gamma0 <= 0.0 ||
        settings.eps_in <= 0.0 || settings.eps_out <= 0.0) {
        throw std::invalid_argument("padm_solve: invalid settings");
    }

    ConicProblem cp = make_conic_problem(prob);
    auto [X, z] = initial_point(prob, settings.init);
    cp.z_bar = z;
    cp.gamma = settings.gamma0;

    ConicSolver solver(cp, settings.conic);
    solver.warm_start(X);

    PadmResult out;
    PadmTrace& trace = out.trace;
    double gamma = settings.gamma0;

    // Best iterate for the outer-cap fallback: smallest copy gap, ties by
    // higher penalized objective.
    double best_gap = std::numeric_limits<double>::infinity();
    double best_fpen = -std::numeric_limits<double>::infinity();
    Selection best_z = z;
    DualIterate best_X = X;
    bool any_inner_converged = false;

    for (int t = 1; t <= settings.max_outer; ++t) {
        trace.gammas.push_back(gamma);
        solver.set_gamma(gamma);
        DualIterate X_prev = X;
        Selection z_prev = z;
        bool inner_converged = false;

        for (int k = 1; k <= settings.max_inner; ++k) {
            solver.set_anchor(z_prev);
            ConicSolution sub = solver.solve();
            X = sub.X;
            z = update_z(X.x, prob.top_n);

            const double gap = (X.x - z).lpNorm<1>();
            const double change = block_change(X, X_prev, z, z_prev);
            const double f_plain = dual_objective(X, prob);
            const double f_pen =
                regularized_objective(X, prob) - gamma * gap;

            trace.steps.push_back({t, k, gamma, f_plain, f_pen, gap, change,
                                   sub.primal_residual, sub.dual_residual});

            X_prev = X;
            z_prev = z;
            if (change <= settings.eps_in) {
                inner_converged = true;
                break;
            }
        }
        any_inner_converged = any_inner_converged || inner_converged;

        const double gap = (X.x - z).lpNorm<1>();
        const double f_pen = regularized_objective(X, prob) - gamma * gap;
        if (gap < best_gap || (gap == best_gap && f_pen > best_fpen)) {
            best_gap = gap;
            best_fpen = f_pen;
            best_z = z;
            best_X = X;
        }

        if (gap <= settings.eps_out) {
            trace.status = PadmStatus::converged;
            out.z = z;
            out.X = X;
            return out;
        }
        gamma = settings.theta * gamma;
    }

    trace.status =
        any_inner_converged ? PadmStatus::outer_cap : PadmStatus::inner_stall;
    out.z = best_z;
    out.X = best_X;
    return out;
}

WorstCaseResult worst_case_value(const Selection& z, const UserProblem& prob,
                                 double tol, int max_iter) {
    const Index n = prob.n();
    if (z.size() != n) throw std::invalid_argument("worst_case_value: shape");
    for (Index i = 0; i < n; ++i) {
        if (z(i) != 0.0 && z(i) != 1.0) {
            throw std::invalid_argument("worst_case_value: z not binary");
        }
    }
    ConicProblem cp;
    cp.mu = prob.mu;
    cp.sigma = prob.sigma;
    cp.kappa1 = prob.kappa1;
    cp.kappa2 = prob.kappa2;
    cp.box_lo = z;
    cp.box_hi = z;

    // The certified value should be accurate to about `tol`; consensus
    // residuals two orders tighter deliver that for these block sizes.
    ConicSettings st;
    st.tol_primal = 1e-2 * tol;
    st.tol_rel = 1e-2 * tol;
    st.max_iter = max_iter;

    const ConicSolution sol = solve(cp, st);
    return {sol.objective_plain, sol.status, sol.iterations};
}

SelectResult brute_force_select(const UserProblem& prob, double tol) {
    prob.validate();
    const Index n = prob.n();
    const int N = prob.top_n;

    double combos = 1.0;
    for (int i = 0; i < N; ++i) {
        combos *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    if (combos > 1e5) {
        throw std::invalid_argument(
            "brute_force_select: C(n,N) exceeds the 1e5 guard");
    }

    ConicProblem cp;
    cp.mu = prob.mu;
    cp.sigma = prob.sigma;
    cp.kappa1 = prob.kappa1;
    cp.kappa2 = prob.kappa2;
    cp.box_lo = Vector::Zero(n);
    cp.box_hi = Vector::Zero(n);

    ConicSettings st;
    st.tol_primal = tol;
    st.tol_rel = tol;

    ConicSolver solver(cp, st);

    std::vector<Index> comb(N);
    std::iota(comb.begin(), comb.end(), Index{0});

    SelectResult best;
    best.value = -std::numeric_limits<double>::infinity();
    bool first = true;

    for (;;) {
        Selection z = Selection::Zero(n);
        for (const Index i : comb) z(i) = 1.0;
        solver.set_box(z, z);
        const ConicSolution sol = solver.solve();
        if (first || sol.objective_plain > best.value) {
            best.value = sol.objective_plain;
            best.z = z;
            first = false;
        }
        // next lexicographic combination
        int j = N - 1;
        while (j >= 0 && comb[j] == n - N + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (int l = j + 1; l < N; ++l) comb[l] = comb[l - 1] + 1;
    }
    return best;
}

void write_trace_csv(const PadmTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_trace_csv: cannot write '" + path + "'");
    }
    out.precision(12);
    out << "t,k,gamma,f,f_pen,l1_gap,step_change,res_primal,res_dual\n";
    for (const auto& s : trace.steps) {
        out << s.outer << ',' << s.inner << ',' << s.gamma << ',' << s.f << ','
            << s.f_pen << ',' << s.l1_gap << ',' << s.step_change << ','
            << s.res_primal << ',' << s.res_dual << '\n';
    }
}

}  // namespace recsel
