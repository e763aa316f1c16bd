#include "recsel/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "recsel/psd.hpp"

namespace recsel {

DualIterate DualIterate::zero(Index n) {
    DualIterate X;
    X.p = Vector::Zero(n);
    X.q = Vector::Zero(n);
    X.x = Vector::Zero(n);
    X.P = Matrix::Zero(n, n);
    X.Q = Matrix::Zero(n, n);
    X.r = 0.0;
    X.s = 0.0;
    return X;
}

Matrix ConicProblem::a_hat() const {
    return mu * mu.transpose() - kappa2 * sigma;
}

void ConicProblem::validate() const {
    const Index dim = n();
    if (dim < 1) throw std::invalid_argument("ConicProblem: empty mu");
    if (sigma.rows() != dim || sigma.cols() != dim) {
        throw std::invalid_argument("ConicProblem: sigma shape mismatch");
    }
    if (!sigma.allFinite() || !mu.allFinite()) {
        throw std::invalid_argument("ConicProblem: non-finite data");
    }
    if (kappa1 < 0 || kappa2 < 0 || gamma < 0 || lambda_p < 0 || lambda_q < 0) {
        throw std::invalid_argument("ConicProblem: negative weight");
    }
    if (z_bar.size() != 0 && z_bar.size() != dim) {
        throw std::invalid_argument("ConicProblem: z_bar shape mismatch");
    }
    if (box_lo.size() != box_hi.size() ||
        (box_lo.size() != 0 && box_lo.size() != dim)) {
        throw std::invalid_argument("ConicProblem: box shape mismatch");
    }
    if (box_lo.size() == dim && ((box_hi - box_lo).minCoeff() < 0)) {
        throw std::invalid_argument("ConicProblem: box_lo > box_hi");
    }
}

double dual_objective_plain(const DualIterate& X, const ConicProblem& prob) {
    const Index n = prob.n();
    if (X.p.size() != n || X.P.rows() != n || X.Q.rows() != n ||
        X.q.size() != n || X.x.size() != n) {
        throw std::invalid_argument("dual_objective: shape mismatch");
    }
    const double q_term = prob.a_hat().cwiseProduct(X.Q).sum();
    const double p_term = prob.sigma.cwiseProduct(X.P).sum();
    return q_term - p_term + 2.0 * prob.mu.dot(X.p) - prob.kappa1 * X.r - X.s;
}

std::string FeasibilityReport::summary() const {
    std::ostringstream os;
    os << "equality " << (equality_ok ? "ok" : "FAIL") << " (" << equality_violation
       << "), psd1 " << (psd1_ok ? "ok" : "FAIL") << " (lam_min " << psd1_min_eig
       << "), psd2 " << (psd2_ok ? "ok" : "FAIL") << " (lam_min " << psd2_min_eig
       << "), box " << (box_ok ? "ok" : "FAIL") << " (" << box_violation
       << "), nonneg " << (nonneg_ok ? "ok" : "FAIL");
    if (!trace_ok) os << ", trace FAIL (" << trace_violation << ")";
    if (!cut_ok) os << ", cut FAIL (" << cut_violation << ")";
    return os.str();
}

namespace {

Matrix stack_block(const Matrix& M, const Vector& v, double corner) {
    const Index n = v.size();
    Matrix A(n + 1, n + 1);
    A.topLeftCorner(n, n) = M;
    A.topRightCorner(n, 1) = v;
    A.bottomLeftCorner(1, n) = v.transpose();
    A(n, n) = corner;
    return A;
}

}  // namespace

FeasibilityReport check_feasibility(const DualIterate& X,
                                    const ConicProblem& prob, double tol) {
    const Index n = prob.n();
    if (X.p.size() != n || X.q.size() != n || X.x.size() != n ||
        X.P.rows() != n || X.Q.rows() != n) {
        throw std::invalid_argument("check_feasibility: shape mismatch");
    }
    FeasibilityReport rep;

    rep.equality_violation =
        (X.p + 0.5 * X.q + X.Q * prob.mu).cwiseAbs().maxCoeff();
    rep.equality_ok = rep.equality_violation <= tol;

    rep.psd1_min_eig = min_eigenvalue(stack_block(X.P, X.p, X.r));
    rep.psd1_ok = rep.psd1_min_eig >= -tol;

    const Vector v = 0.5 * (X.q + X.x);
    rep.psd2_min_eig = min_eigenvalue(stack_block(X.Q, v, X.s));
    rep.psd2_ok = rep.psd2_min_eig >= -tol;

    Vector lo = prob.box_lo.size() ? prob.box_lo : Vector::Zero(n);
    Vector hi = prob.box_hi.size() ? prob.box_hi : Vector::Ones(n);
    rep.box_violation =
        std::max((lo - X.x).maxCoeff(), (X.x - hi).maxCoeff());
    rep.box_violation = std::max(rep.box_violation, 0.0);
    rep.box_ok = rep.box_violation <= tol;

    rep.nonneg_violation = std::max({-X.r, -X.s, 0.0});
    rep.nonneg_ok = rep.nonneg_violation <= tol;

    if (prob.tau_p) {
        rep.trace_violation =
            std::max(rep.trace_violation, X.P.trace() - *prob.tau_p);
    }
    if (prob.tau_q) {
        rep.trace_violation =
            std::max(rep.trace_violation, X.Q.trace() - *prob.tau_q);
    }
    rep.trace_ok = rep.trace_violation <= tol;

    if (prob.f_lower) {
        rep.cut_violation =
            std::max(0.0, *prob.f_lower - dual_objective_plain(X, prob));
        rep.cut_ok = rep.cut_violation <= tol;
    }
    return rep;
}

DualIterate feasible_point(const ConicProblem& prob) {
    const Index n = prob.n();
    DualIterate X = DualIterate::zero(n);
    X.p = -prob.mu;
    X.P = Matrix::Identity(n, n);
    X.Q = Matrix::Identity(n, n);
    X.r = prob.mu.squaredNorm() + 1.0;
    Vector lo = prob.box_lo.size() ? prob.box_lo : Vector::Zero(n);
    Vector hi = prob.box_hi.size() ? prob.box_hi : Vector::Ones(n);
    if (prob.z_bar.size() == n) {
        X.x = prob.z_bar.cwiseMax(lo).cwiseMin(hi);
    } else {
        X.x = 0.5 * (lo + hi);
    }
    X.s = 0.25 * X.x.squaredNorm() + 1.0;
    return X;
}

// ---------------------------------------------------------------------------
// Splitting solver internals.
//
// Consensus copies: Y1 for the [P p; p' r] block, Y2 for the [Q v; v' s]
// block with v = (q + x)/2, xt for the box/L1 prox on x, and a scalar ct for
// the optional objective cut. The xi-step minimizes the augmented Lagrangian
// exactly over the coupling equality p = -q/2 - Q mu; it reduces to closed
// forms per block after eliminating p, with at most three scalar unknowns
// (cut consistency and the two trace multipliers) resolved through an affine
// probe solve.
// ---------------------------------------------------------------------------

struct ConicSolver::Impl {
    ConicProblem prob;
    ConicSettings settings;
    Index n;
    Matrix B;      // mu mu' - kappa2 sigma
    Vector Bmu;
    double m2;     // ||mu||^2
    Vector lo, hi, zbar;
    bool has_cut = false;
    bool has_trace_p = false, has_trace_q = false;

    double rho;

    // xi blocks
    Matrix P, Q;
    Vector p, q, x;
    double r = 0, s = 0;

    // copies and scaled duals
    Matrix Y1, Y2, U1, U2;
    Vector xt, u3;
    double ct = 0, u4 = 0;

    // per-iteration workspaces
    Matrix A1, A2, M1, M2, G1, G2;
    Matrix Y1_prev, Y2_prev;
    Vector xt_prev;
    double ct_prev = 0;
    Vector g1p, g2v, gx, c1, h, b0, w, v;
    Matrix G1P, G2Q;
    double g1r = 0, g2s = 0, gc = 0;
    Eigen::SelfAdjointEigenSolver<Matrix> eig;

    Impl(ConicProblem pr, ConicSettings st)
        : prob(std::move(pr)), settings(st) {
        prob.validate();
        n = prob.n();
        B = prob.a_hat();
        Bmu = B * prob.mu;
        m2 = prob.mu.squaredNorm();
        lo = prob.box_lo.size() ? prob.box_lo : Vector::Zero(n);
        hi = prob.box_hi.size() ? prob.box_hi : Vector::Ones(n);
        zbar = prob.z_bar.size() ? prob.z_bar : Vector::Zero(n);
        has_cut = prob.f_lower.has_value();
        has_trace_p = prob.tau_p.has_value();
        has_trace_q = prob.tau_q.has_value();
        rho = settings.step_parameter;

        A1.resize(n + 1, n + 1);
        A2.resize(n + 1, n + 1);
        cold_start();
    }

    void cold_start() {
        DualIterate X0 = feasible_point(prob);
        // With tiny kappa1 the optimal r sits near sqrt(p'Sigma p / kappa1);
        // starting the consensus at that scale avoids a long drift phase.
        if (prob.kappa1 < 1e-3) {
            const double ps = X0.p.dot(prob.sigma * X0.p);
            const double target = std::sqrt(ps / std::max(prob.kappa1, ps * 1e-14));
            X0.r = std::max(X0.r, std::min(1e7, target));
        }
        load_iterate(X0);
        reset_duals();
    }

    void load_iterate(const DualIterate& X) {
        P = X.P;
        Q = X.Q;
        p = X.p;
        q = X.q;
        x = X.x;
        r = X.r;
        s = X.s;
        build_A1();
        build_A2();
        Y1 = project_psd(A1);
        Y2 = project_psd(A2);
        xt = x.cwiseMax(lo).cwiseMin(hi);
        ct = std::max(has_cut ? *prob.f_lower : 0.0, f_lin());
    }

    void reset_duals() {
        U1 = Matrix::Zero(n + 1, n + 1);
        U2 = Matrix::Zero(n + 1, n + 1);
        u3 = Vector::Zero(n);
        u4 = 0;
    }

    void build_A1() {
        A1.topLeftCorner(n, n) = P;
        A1.topRightCorner(n, 1) = p;
        A1.bottomLeftCorner(1, n) = p.transpose();
        A1(n, n) = r;
    }

    void build_A2() {
        v = 0.5 * (q + x);
        A2.topLeftCorner(n, n) = Q;
        A2.topRightCorner(n, 1) = v;
        A2.bottomLeftCorner(1, n) = v.transpose();
        A2(n, n) = s;
    }

    double f_lin() const {
        return B.cwiseProduct(Q).sum() - prob.sigma.cwiseProduct(P).sum() +
               2.0 * prob.mu.dot(p) - prob.kappa1 * r - s;
    }

    // Exact minimizer of the augmented Lagrangian xi-block for fixed scalar
    // parameters chi (cut force / rho) and trace multipliers.
    void core(double chi, double nu_p, double nu_q) {
        const double k = 1.0 - chi;
        const double dP = rho + 2.0 * prob.lambda_p;
        const double dQ = rho + 2.0 * prob.lambda_q;

        P = (rho * G1P - k * prob.sigma).eval();
        if (nu_p != 0.0) P.diagonal().array() -= nu_p;
        P /= dP;
        r = g1r - k * prob.kappa1 / rho;
        s = g2s - k / rho;

        h = (rho * (G2Q * prob.mu) + k * (Bmu - 2.0 * m2 * prob.mu) -
             nu_q * prob.mu) /
            dQ;
        c1 = g2v + 2.0 * gx + g1p + (k / rho) * prob.mu;
        const double alpha = 1.0 + 2.0 * rho * m2 / (5.0 * dQ);
        const double beta = 2.0 * rho / (5.0 * dQ);
        b0 = 0.4 * (c1 + h) - gx - (k / rho) * prob.mu;
        const double sig = b0.dot(prob.mu) / (alpha + beta * m2);
        w = (b0 - beta * sig * prob.mu) / alpha;
        x = w + gx + (k / rho) * prob.mu;
        q = 2.0 * g2v + 2.0 * gx - 3.0 * x;
        Q = (rho * G2Q + k * (B - 2.0 * (prob.mu * prob.mu.transpose())) -
             rho * (w * prob.mu.transpose() + prob.mu * w.transpose()))
                .eval();
        if (nu_q != 0.0) Q.diagonal().array() -= nu_q;
        Q /= dQ;
        p = -0.5 * q - Q * prob.mu;
    }

    void xi_update() {
        G1 = Y1 - U1;
        G2 = Y2 - U2;
        G1P = G1.topLeftCorner(n, n);
        g1p = G1.topRightCorner(n, 1);
        g1r = G1(n, n);
        G2Q = G2.topLeftCorner(n, n);
        g2v = G2.topRightCorner(n, 1);
        g2s = G2(n, n);
        gx = xt - u3;
        gc = ct - u4;

        if (!has_cut && !has_trace_p && !has_trace_q) {
            core(0.0, 0.0, 0.0);
            return;
        }
        solve_with_scalars();
    }

    // Residuals of the scalar consistency equations at the current xi.
    // chi must equal rho * (f_lin - gc); active traces must sit at their cap.
    void scalar_residuals(bool act_p, bool act_q, double chi, Vector& out) {
        Index k = 0;
        if (has_cut) out(k++) = chi - rho * (f_lin() - gc);
        if (act_p) out(k++) = P.trace() - *prob.tau_p;
        if (act_q) out(k++) = Q.trace() - *prob.tau_q;
    }

    void solve_with_scalars() {
        const bool try_p[2] = {false, true};
        const bool try_q[2] = {false, true};
        for (int ip = 0; ip < (has_trace_p ? 2 : 1); ++ip) {
            for (int iq = 0; iq < (has_trace_q ? 2 : 1); ++iq) {
                const bool ap = try_p[ip], aq = try_q[iq];
                const Index m = (has_cut ? 1 : 0) + (ap ? 1 : 0) + (aq ? 1 : 0);
                Vector theta = Vector::Zero(std::max<Index>(m, 1));
                if (m > 0) {
                    Vector b(m), col(m);
                    Matrix A(m, m);
                    auto eval = [&](const Vector& th, Vector& res) {
                        Index k = 0;
                        const double chi = has_cut ? th(k++) : 0.0;
                        const double np = ap ? th(k++) : 0.0;
                        const double nq = aq ? th(k++) : 0.0;
                        core(chi, np, nq);
                        scalar_residuals(ap, aq, chi, res);
                    };
                    eval(Vector::Zero(m), b);
                    for (Index j = 0; j < m; ++j) {
                        Vector e = Vector::Zero(m);
                        e(j) = 1.0;
                        eval(e, col);
                        A.col(j) = col - b;
                    }
                    theta = A.fullPivLu().solve(-b);
                    Index k = 0;
                    const double chi = has_cut ? theta(k++) : 0.0;
                    const double np = ap ? theta(k++) : 0.0;
                    const double nq = aq ? theta(k++) : 0.0;
                    core(chi, np, nq);
                    // KKT screening for this active set.
                    const double mtol = 1e-9 * (1.0 + rho);
                    if (ap && np < -mtol) continue;
                    if (aq && nq < -mtol) continue;
                } else {
                    core(0.0, 0.0, 0.0);
                }
                const double ttolp =
                    has_trace_p ? 1e-9 * (1.0 + std::abs(*prob.tau_p)) : 0.0;
                const double ttolq =
                    has_trace_q ? 1e-9 * (1.0 + std::abs(*prob.tau_q)) : 0.0;
                if (has_trace_p && !ap && P.trace() > *prob.tau_p + ttolp) continue;
                if (has_trace_q && !aq && Q.trace() > *prob.tau_q + ttolq) continue;
                return;
            }
        }
        // All active-set screens failed (numerically ill-posed); the last
        // core() result stands and the consensus loop absorbs the error.
    }

    void psd_project(const Matrix& M, Matrix& out) {
        eig.compute(M);
        const auto& lam = eig.eigenvalues();
        if (lam(0) >= 0.0) {
            out = M;
            return;
        }
        if (lam(lam.size() - 1) <= 0.0) {
            out.setZero(M.rows(), M.cols());
            return;
        }
        Index first_pos = 0;
        while (first_pos < lam.size() && lam(first_pos) < 0.0) ++first_pos;
        const Index kpos = lam.size() - first_pos;
        Matrix W = eig.eigenvectors().rightCols(kpos) *
                   lam.tail(kpos).cwiseSqrt().asDiagonal();
        out.noalias() = W * W.transpose();
    }

    // The r and s corners of the cone blocks are scale-free (with small
    // kappa1 the optimal r sits orders of magnitude above everything else),
    // so they get relative thresholds while the structural parts are held to
    // absolute-plus-relative Frobenius accuracy.
    struct Residuals {
        double pri_struct = 0, pri_corner = 0;
        double dua_struct = 0, dua_corner = 0;
        double scale_struct = 1.0;
    };

    static double struct_gap(const Matrix& a, const Matrix& b) {
        const Index m = a.rows() - 1;
        double sq = (a - b).squaredNorm();
        const double corner = a(m, m) - b(m, m);
        sq -= corner * corner;
        return std::sqrt(std::max(sq, 0.0));
    }

    static double struct_norm(const Matrix& a) {
        const Index m = a.rows() - 1;
        return std::sqrt(std::max(a.squaredNorm() - a(m, m) * a(m, m), 0.0));
    }

    static double corner_gap(const Matrix& a, const Matrix& b) {
        const Index m = a.rows() - 1;
        return std::abs(a(m, m) - b(m, m)) / (1.0 + std::abs(b(m, m)));
    }

    Residuals iterate() {
        xi_update();
        build_A1();
        build_A2();
        const double flin = f_lin();
        if (!x.allFinite() || !std::isfinite(flin)) {
            throw std::runtime_error("ConicSolver: non-finite iterates");
        }

        Y1_prev = Y1;
        Y2_prev = Y2;
        xt_prev = xt;
        ct_prev = ct;

        M1 = A1 + U1;
        psd_project(M1, Y1);
        M2 = A2 + U2;
        psd_project(M2, Y2);

        const double thresh = prob.gamma / rho;
        for (Index i = 0; i < n; ++i) {
            const double vi = x(i) + u3(i);
            const double d = vi - zbar(i);
            const double y =
                zbar(i) + (d > thresh ? d - thresh : (d < -thresh ? d + thresh : 0.0));
            xt(i) = std::clamp(y, lo(i), hi(i));
        }
        if (has_cut) ct = std::max(*prob.f_lower, flin + u4);

        U1 += A1 - Y1;
        U2 += A2 - Y2;
        u3 += x - xt;
        if (has_cut) u4 += flin - ct;

        Residuals res;
        res.pri_struct = std::max(
            {struct_gap(A1, Y1), struct_gap(A2, Y2), (x - xt).norm(),
             has_cut ? std::abs(flin - ct) / (1.0 + std::abs(ct)) : 0.0});
        res.pri_corner = std::max(corner_gap(A1, Y1), corner_gap(A2, Y2));
        res.dua_struct =
            rho * std::max({struct_gap(Y1, Y1_prev), struct_gap(Y2, Y2_prev),
                            (xt - xt_prev).norm()});
        res.dua_corner =
            rho * std::max({corner_gap(Y1, Y1_prev), corner_gap(Y2, Y2_prev),
                            has_cut ? std::abs(ct - ct_prev) / (1.0 + std::abs(ct))
                                    : 0.0});
        res.scale_struct =
            std::max({struct_norm(A1), struct_norm(Y1), struct_norm(A2),
                      struct_norm(Y2), x.norm(), xt.norm(), 1.0});
        return res;
    }

    ConicSolution run() {
        const double sqrt_dim =
            std::sqrt(static_cast<double>(2 * (n + 1) * (n + 1) + n));
        const double data_scale =
            std::max({prob.sigma.norm(), B.norm(), 2.0 * prob.mu.norm(),
                      prob.kappa1, 1.0});

        ConicSolution sol;
        Residuals res;
        int it = 0;
        for (; it < settings.max_iter; ++it) {
            res = iterate();
            const double eps_pri = settings.tol_primal *
                                   (sqrt_dim + res.scale_struct);
            const double eps_dua = settings.tol_rel * (sqrt_dim + data_scale);
            if (settings.verbose > 0 && it % settings.verbose == 0) {
                ConicSolution probe;
                extract(probe);
                std::fprintf(stderr,
                             "[conic %6d] rho=%.2e pri=%.3e/%.1e (c %.3e) "
                             "dua=%.3e/%.1e (c %.3e) obj=%.10e r=%.3e\n",
                             it, rho, res.pri_struct, eps_pri, res.pri_corner,
                             res.dua_struct, eps_dua, res.dua_corner,
                             probe.objective, r);
            }
            if (res.pri_struct <= eps_pri &&
                res.pri_corner <= settings.tol_primal &&
                res.dua_struct <= eps_dua &&
                res.dua_corner <= settings.tol_rel) {
                sol.status = ConicStatus::converged;
                ++it;
                break;
            }
            if ((it + 1) % settings.adapt_interval == 0) {
                adapt_rho(res, eps_pri, eps_dua);
            }
        }
        if (sol.status != ConicStatus::converged) sol.status = ConicStatus::max_iter;
        sol.iterations = it;
        sol.primal_residual = std::max(res.pri_struct, res.pri_corner);
        sol.dual_residual = std::max(res.dua_struct, res.dua_corner);
        extract(sol);
        return sol;
    }

    void adapt_rho(const Residuals& res, double eps_pri, double eps_dua) {
        const double rp = std::max(res.pri_struct / eps_pri,
                                   res.pri_corner / settings.tol_primal);
        const double rd = std::max(res.dua_struct / eps_dua,
                                   res.dua_corner / settings.tol_rel);
        double factor = 1.0;
        if (rp > 10.0 * rd) {
            factor = 2.0;
        } else if (rd > 10.0 * rp) {
            factor = 0.5;
        }
        if (factor != 1.0) {
            const double next = std::clamp(rho * factor, 1e-6, 1e8);
            if (next != rho) {
                const double c = rho / next;
                U1 *= c;
                U2 *= c;
                u3 *= c;
                u4 *= c;
                rho = next;
            }
        }
    }

    // The returned iterate takes both cone blocks from the projected copies,
    // so the PSD constraints (and the Schur-type norm inequalities they
    // imply) hold exactly; the coupling equality holds to within the
    // consensus residual, which is what the tolerance promises.
    void extract(ConicSolution& sol) {
        DualIterate X;
        X.P = Y1.topLeftCorner(n, n);
        X.p = Y1.topRightCorner(n, 1);
        X.r = Y1(n, n);
        X.Q = Y2.topLeftCorner(n, n);
        X.s = Y2(n, n);
        const Vector vy = Y2.topRightCorner(n, 1);

        X.x = xt;
        const double eps0 = settings.interior_eps;
        if (eps0 > 0.0) {
            for (Index i = 0; i < n; ++i) {
                const double width = hi(i) - lo(i);
                if (width <= 0.0) continue;
                const double nu = rho * u3(i);
                const double cap = 0.25 * width;
                if (xt(i) >= hi(i) - 1e-12) {
                    X.x(i) = hi(i) - std::min(eps0 / (1.0 + std::max(nu, 0.0)), cap);
                } else if (xt(i) <= lo(i) + 1e-12) {
                    X.x(i) = lo(i) + std::min(eps0 / (1.0 + std::max(-nu, 0.0)), cap);
                }
            }
        }
        X.q = 2.0 * vy - X.x;

        sol.objective_plain = dual_objective_plain(X, prob);
        sol.objective = sol.objective_plain -
                        prob.lambda_p * X.P.squaredNorm() -
                        prob.lambda_q * X.Q.squaredNorm() -
                        prob.gamma * (X.x - zbar).lpNorm<1>();
        sol.X = std::move(X);
    }
};

ConicSolver::ConicSolver(ConicProblem prob, ConicSettings settings)
    : impl_(new Impl(std::move(prob), settings)) {}

ConicSolver::~ConicSolver() { delete impl_; }

ConicSolver::ConicSolver(ConicSolver&& other) noexcept : impl_(other.impl_) {
    other.impl_ = nullptr;
}

ConicSolver& ConicSolver::operator=(ConicSolver&& other) noexcept {
    std::swap(impl_, other.impl_);
    return *this;
}

void ConicSolver::set_gamma(double gamma) {
    if (gamma < 0) throw std::invalid_argument("set_gamma: negative gamma");
    impl_->prob.gamma = gamma;
}

void ConicSolver::set_anchor(const Vector& z_bar) {
    if (z_bar.size() != impl_->n) {
        throw std::invalid_argument("set_anchor: shape mismatch");
    }
    impl_->prob.z_bar = z_bar;
    impl_->zbar = z_bar;
}

void ConicSolver::set_box(const Vector& lo, const Vector& hi) {
    if (lo.size() != impl_->n || hi.size() != impl_->n ||
        (hi - lo).minCoeff() < 0) {
        throw std::invalid_argument("set_box: invalid bounds");
    }
    impl_->prob.box_lo = lo;
    impl_->prob.box_hi = hi;
    impl_->lo = lo;
    impl_->hi = hi;
}

void ConicSolver::warm_start(const DualIterate& X) {
    impl_->load_iterate(X);
    impl_->reset_duals();
}

ConicSolution ConicSolver::solve() { return impl_->run(); }

const ConicProblem& ConicSolver::problem() const { return impl_->prob; }

ConicSolution solve(const ConicProblem& prob, const ConicSettings& settings) {
    ConicSolver solver(prob, settings);
    return solver.solve();
}

}  // namespace recsel
