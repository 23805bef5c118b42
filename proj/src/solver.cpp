#include "condfrag/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "condfrag/operators.hpp"

namespace condfrag {

namespace {

constexpr double kDtMax = 1.0;
constexpr double kDtMin = 1e-14;
constexpr double kDtGrow = 1.1;

/// Compensated accumulator: the solver resolves energy differences near
/// machine precision, where naive summation noise would defeat the line
/// search and the |dE| convergence test.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

double dot_h(const std::vector<double>& a, const std::vector<double>& b, double h) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * h;
}

double norm_h(const std::vector<double>& a, double h) { return std::sqrt(dot_h(a, a, h)); }

void normalize_raw(std::vector<double>& v, double h) {
    const double nrm = norm_h(v, h);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::runtime_error("solver: iterate lost normalizability");
    const double inv = 1.0 / nrm;
    for (double& q : v) q *= inv;
}

void zero_constrained_points(std::vector<double>& v, int node) {
    v.front() = 0.0;
    v.back() = 0.0;
    if (node >= 0) v[static_cast<size_t>(node)] = 0.0;
}

void parity_project(const Grid& g, std::vector<double>& v, bool even) {
    const int n = g.n();
    for (int i = 0, j = n - 1; i <= j; ++i, --j) {
        const double a = v[static_cast<size_t>(i)];
        const double b = v[static_cast<size_t>(j)];
        const double p = even ? 0.5 * (a + b) : 0.5 * (a - b);
        v[static_cast<size_t>(i)] = p;
        v[static_cast<size_t>(j)] = even ? p : -p;
        if (i == j && !even) v[static_cast<size_t>(i)] = 0.0;
    }
}

bool potential_is_even(const Potential& pot) {
    if (!pot.grid.is_symmetric()) return false;
    const int n = pot.grid.n();
    double scale = 1.0;
    for (double u : pot.values) scale = std::max(scale, std::abs(u));
    for (int i = 0; i < n / 2; ++i)
        if (std::abs(pot.values[static_cast<size_t>(i)] -
                     pot.values[static_cast<size_t>(n - 1 - i)]) > 1e-12 * scale)
            return false;
    return true;
}

/// (I + dt (K + diag(U))) in band form.
SymPentaBands shifted_operator(const SymPentaBands& kinetic, const std::vector<double>& U,
                               double dt) {
    SymPentaBands a = kinetic;
    const int n = a.n();
    for (int i = 0; i < n; ++i) {
        a.d0[static_cast<size_t>(i)] =
            1.0 + dt * (a.d0[static_cast<size_t>(i)] + U[static_cast<size_t>(i)]);
    }
    for (auto& q : a.d1) q *= dt;
    for (auto& q : a.d2) q *= dt;
    return a;
}

struct SingleProblem {
    const CondensateConfig& cfg;
    const Potential& pot;
    SymPentaBands kinetic;
    int node;
    bool even_projectable;
    double h;
    double gcoef; // g (N - 1)

    explicit SingleProblem(const CondensateConfig& c, const Potential& p)
        : cfg(c), pot(p), kinetic(kinetic_bands(p.grid, p.hard_wall)),
          node(hard_wall_node_index(p.grid, p.hard_wall)),
          even_projectable(potential_is_even(p)), h(p.grid.dx()),
          gcoef(c.g * static_cast<double>(c.n_particles - 1)) {}

    void postprocess(std::vector<double>& v) const {
        zero_constrained_points(v, node);
        if (even_projectable) parity_project(pot.grid, v, true);
        normalize_raw(v, h);
    }

    double energy(const std::vector<double>& v) const {
        const double N = static_cast<double>(cfg.n_particles);
        KahanSum eps, quart;
        eps.add(kinetic.quad_form(v));
        for (size_t i = 0; i < v.size(); ++i) {
            const double d = v[i] * v[i];
            eps.add(pot.values[i] * d);
            quart.add(d * d);
        }
        return N * eps.s * h + 0.5 * cfg.g * N * (N - 1.0) * quart.s * h;
    }

    /// Per-particle effective Hamiltonian application.
    void apply_heff(const std::vector<double>& v, std::vector<double>& out) const {
        kinetic.apply(v, out);
        for (size_t i = 0; i < v.size(); ++i)
            out[i] += (pot.values[i] + gcoef * v[i] * v[i]) * v[i];
    }
};

} // namespace

RealWavefunction default_single_guess(const Potential& pot) {
    return gaussian_orbital(pot.grid, 0.0, 1.0);
}

std::vector<double> grad_single(const CondensateConfig& config, const RealWavefunction& phi0,
                                const Potential& pot) {
    require_same_grid(phi0.grid, pot.grid, "grad_single");
    SingleProblem prob(config, pot);
    std::vector<double> out;
    prob.apply_heff(phi0.values, out);
    const double scale = 2.0 * static_cast<double>(config.n_particles);
    for (double& q : out) q *= scale;
    return out;
}

std::vector<double> project_tangent(const Grid& grid, const std::vector<double>& grad,
                                    const RealWavefunction& phi) {
    std::vector<double> out = grad;
    const double c = dot_h(out, phi.values, grid.dx());
    for (size_t i = 0; i < out.size(); ++i) out[i] -= c * phi.values[i];
    return out;
}

std::pair<RealWavefunction, SolverReport> solve_single_ground(const CondensateConfig& config,
                                                              const Potential& pot,
                                                              const RealWavefunction* warm_start,
                                                              bool record_history) {
    config.validate();
    require_symmetric(pot.grid, "solve_single_ground");
    SingleProblem prob(config, pot);
    const double h = prob.h;

    std::vector<double> v =
        warm_start ? warm_start->values : default_single_guess(pot).values;
    if (static_cast<int>(v.size()) != pot.grid.n())
        throw std::invalid_argument("solve_single_ground: warm start grid mismatch");
    prob.postprocess(v);

    SolverReport rep;
    double dt = config.dt_imag;
    PentaLDLT precond(shifted_operator(prob.kinetic, pot.values, dt));
    auto refactor = [&]() { precond = PentaLDLT(shifted_operator(prob.kinetic, pot.values, dt)); };

    std::vector<double> Hv, r, w, trial;
    double e_prev = prob.energy(v);
    double last_de = std::numeric_limits<double>::infinity();
    double mu = 0.0;

    // Once the predicted descent per step falls below the energy evaluation
    // noise floor the line search flips coins; from there run the flow at a
    // frozen (known stable) dt with an instability guard only.
    bool fine_phase = false;
    double e_anchor = 0.0;

    long long iter = 0;
    for (; iter < config.max_iters; ++iter) {
        prob.apply_heff(v, Hv);
        mu = dot_h(v, Hv, h);
        r = Hv;
        for (size_t i = 0; i < r.size(); ++i) r[i] -= mu * v[i];
        const double resid = norm_h(r, h);
        if (record_history) rep.energy_history.push_back({iter, e_prev, resid});
        if (resid <= config.tol_gradient && last_de <= config.tol_energy) {
            rep.converged = true;
            rep.residual = resid;
            break;
        }
        rep.residual = resid;

        const double noise_floor = 64.0 * 2.2e-16 * std::max(1.0, std::abs(e_prev));
        if (!fine_phase && dt * resid * resid <= noise_floor) {
            fine_phase = true;
            e_anchor = e_prev;
        }

        bool accepted = false;
        if (fine_phase) {
            precond.solve(r, w);
            trial = v;
            for (size_t i = 0; i < trial.size(); ++i) trial[i] -= dt * w[i];
            prob.postprocess(trial);
            const double e_trial = prob.energy(trial);
            if (e_trial > e_anchor + 1e-7 * std::max(1.0, std::abs(e_anchor))) {
                dt *= 0.5; // genuine instability, not noise: reject and retry
                refactor();
                if (dt < kDtMin) break;
                continue;
            }
            last_de = std::abs(e_prev - e_trial);
            v.swap(trial);
            e_prev = e_trial;
            e_anchor = std::min(e_anchor, e_trial);
            accepted = true;
        } else {
            while (dt >= kDtMin) {
                precond.solve(r, w);
                trial = v;
                for (size_t i = 0; i < trial.size(); ++i) trial[i] -= dt * w[i];
                prob.postprocess(trial);
                const double e_trial = prob.energy(trial);
                if (e_trial <= e_prev + 1e-13 * std::max(1.0, std::abs(e_prev))) {
                    last_de = std::abs(e_prev - e_trial);
                    v.swap(trial);
                    e_prev = e_trial;
                    accepted = true;
                    break;
                }
                dt *= 0.5;
                refactor();
            }
            if (accepted && dt < kDtMax) {
                dt = std::min(dt * kDtGrow, kDtMax);
                refactor();
            }
        }
        if (!accepted) break; // step size collapsed
    }

    rep.iterations = iter;
    rep.final_energy = e_prev;
    rep.chemical_potential = mu;
    RealWavefunction phi(pot.grid, std::move(v));
    return {std::move(phi), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Dual problem
// ---------------------------------------------------------------------------

DualPair DualPair::from_components(RealWavefunction sym, RealWavefunction asym) {
    require_same_grid(sym.grid, asym.grid, "DualPair");
    require_symmetric(sym.grid, "DualPair");
    const Grid& g = sym.grid;
    double s_scale = 0.0, s_err = 0.0, a_scale = 0.0, a_err = 0.0;
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const int j = n - 1 - i;
        s_scale = std::max(s_scale, std::abs(sym.values[static_cast<size_t>(i)]));
        a_scale = std::max(a_scale, std::abs(asym.values[static_cast<size_t>(i)]));
        s_err = std::max(s_err, std::abs(sym.values[static_cast<size_t>(i)] -
                                         sym.values[static_cast<size_t>(j)]));
        a_err = std::max(a_err, std::abs(asym.values[static_cast<size_t>(i)] +
                                         asym.values[static_cast<size_t>(j)]));
    }
    if (s_err > 1e-8 * std::max(1.0, s_scale))
        throw std::invalid_argument("DualPair: symmetric component is not even");
    if (a_err > 1e-8 * std::max(1.0, a_scale))
        throw std::invalid_argument("DualPair: antisymmetric component is not odd");
    sym.normalize();
    asym.normalize();
    const double c = 1.0 / std::sqrt(2.0);
    std::vector<double> v1(sym.values.size()), v2(sym.values.size());
    for (size_t i = 0; i < v1.size(); ++i) {
        v1[i] = c * (sym.values[i] + asym.values[i]);
        v2[i] = c * (sym.values[i] - asym.values[i]);
    }
    return DualPair{RealWavefunction(g, std::move(v1)), RealWavefunction(g, std::move(v2))};
}

RealWavefunction DualPair::symmetric_component() const {
    const double c = 1.0 / std::sqrt(2.0);
    std::vector<double> s(phi1.values.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = c * (phi1.values[i] + phi2.values[i]);
    return RealWavefunction(phi1.grid, std::move(s));
}

RealWavefunction DualPair::antisymmetric_component() const {
    const double c = 1.0 / std::sqrt(2.0);
    std::vector<double> a(phi1.values.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = c * (phi1.values[i] - phi2.values[i]);
    return RealWavefunction(phi1.grid, std::move(a));
}

namespace {

double centroid(const RealWavefunction& phi) {
    double s = 0.0;
    for (int i = 0; i < phi.grid.n(); ++i) {
        const double q = phi.values[static_cast<size_t>(i)];
        s += phi.grid.x(i) * q * q;
    }
    return s * phi.grid.dx();
}

} // namespace

const RealWavefunction& DualPair::left() const {
    return centroid(phi1) <= 0.0 ? phi1 : phi2;
}

const RealWavefunction& DualPair::right() const {
    return centroid(phi1) <= 0.0 ? phi2 : phi1;
}

namespace {

struct DualProblem {
    const CondensateConfig& cfg;
    const Potential& pot;
    SymPentaBands kinetic;
    int node;
    double h;
    double n1, n2;

    DualProblem(const CondensateConfig& c, const Potential& p)
        : cfg(c), pot(p), kinetic(kinetic_bands(p.grid, p.hard_wall)),
          node(hard_wall_node_index(p.grid, p.hard_wall)), h(p.grid.dx()),
          n1(static_cast<double>(c.n1)), n2(static_cast<double>(c.n2)) {}

    void combine(const std::vector<double>& S, const std::vector<double>& A,
                 std::vector<double>& p1, std::vector<double>& p2) const {
        const double c = 1.0 / std::sqrt(2.0);
        p1.resize(S.size());
        p2.resize(S.size());
        for (size_t i = 0; i < S.size(); ++i) {
            p1[i] = c * (S[i] + A[i]);
            p2[i] = c * (S[i] - A[i]);
        }
    }

    double energy(const std::vector<double>& p1, const std::vector<double>& p2) const {
        KahanSum eps1, eps2, q1, q2, ov;
        eps1.add(kinetic.quad_form(p1));
        eps2.add(kinetic.quad_form(p2));
        for (size_t i = 0; i < p1.size(); ++i) {
            const double d1 = p1[i] * p1[i];
            const double d2 = p2[i] * p2[i];
            eps1.add(pot.values[i] * d1);
            eps2.add(pot.values[i] * d2);
            q1.add(d1 * d1);
            q2.add(d2 * d2);
            ov.add(d1 * d2);
        }
        const double g = cfg.g;
        return (n1 * eps1.s + n2 * eps2.s + 0.5 * g * n1 * (n1 - 1.0) * q1.s +
                0.5 * g * n2 * (n2 - 1.0) * q2.s + 2.0 * g * n1 * n2 * ov.s) * h;
    }

    /// Coupled per-particle operators applied to both orbitals.
    void apply_heff(const std::vector<double>& p1, const std::vector<double>& p2,
                    std::vector<double>& h1, std::vector<double>& h2) const {
        kinetic.apply(p1, h1);
        kinetic.apply(p2, h2);
        const double g = cfg.g;
        for (size_t i = 0; i < p1.size(); ++i) {
            const double d1 = p1[i] * p1[i];
            const double d2 = p2[i] * p2[i];
            h1[i] += (pot.values[i] + g * (n1 - 1.0) * d1 + 2.0 * g * n2 * d2) * p1[i];
            h2[i] += (pot.values[i] + g * (n2 - 1.0) * d2 + 2.0 * g * n1 * d1) * p2[i];
        }
    }

    void postprocess_sym(std::vector<double>& S) const {
        zero_constrained_points(S, node);
        parity_project(pot.grid, S, true);
        normalize_raw(S, h);
    }

    void postprocess_asym(std::vector<double>& A) const {
        zero_constrained_points(A, node);
        parity_project(pot.grid, A, false);
        normalize_raw(A, h);
    }
};

} // namespace

DualGradient grad_dual(const CondensateConfig& config, const DualPair& pair,
                       const Potential& pot) {
    config.validate();
    require_same_grid(pair.phi1.grid, pot.grid, "grad_dual");
    DualProblem prob(config, pot);
    std::vector<double> h1, h2;
    prob.apply_heff(pair.phi1.values, pair.phi2.values, h1, h2);
    const double c = 1.0 / std::sqrt(2.0);
    DualGradient g;
    g.g_sym.resize(h1.size());
    g.g_asym.resize(h1.size());
    // dE/dphi_i = 2 N_i H_i phi_i; chain rule through phi = (S +- A)/sqrt2
    for (size_t i = 0; i < h1.size(); ++i) {
        const double g1 = 2.0 * prob.n1 * h1[i];
        const double g2 = 2.0 * prob.n2 * h2[i];
        g.g_sym[i] = c * (g1 + g2);
        g.g_asym[i] = c * (g1 - g2);
    }
    return g;
}

DualGradient grad_dual_projected(const CondensateConfig& config, const DualPair& pair,
                                 const Potential& pot) {
    DualGradient g = grad_dual(config, pair, pot);
    const Grid& grid = pair.phi1.grid;
    const double h = grid.dx();
    RealWavefunction S = pair.symmetric_component();
    RealWavefunction A = pair.antisymmetric_component();
    parity_project(grid, g.g_sym, true);
    parity_project(grid, g.g_asym, false);
    const double cs = dot_h(g.g_sym, S.values, h) / dot_h(S.values, S.values, h);
    const double ca = dot_h(g.g_asym, A.values, h) / dot_h(A.values, A.values, h);
    for (size_t i = 0; i < g.g_sym.size(); ++i) {
        g.g_sym[i] -= cs * S.values[i];
        g.g_asym[i] -= ca * A.values[i];
    }
    return g;
}

DualPair default_dual_guess(const Potential& pot) {
    require_symmetric(pot.grid, "default_dual_guess");
    const Grid& g = pot.grid;
    // right-hand well position from the tabulated potential; clamp so the
    // antisymmetrized guess survives merged wells (b <= sigma^2)
    double x_min_u = 0.0, u_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n(); ++i) {
        if (g.x(i) <= 0.0) continue;
        if (pot.values[static_cast<size_t>(i)] < u_best) {
            u_best = pot.values[static_cast<size_t>(i)];
            x_min_u = g.x(i);
        }
    }
    const double x0 = std::max(x_min_u, 0.75);
    std::vector<double> S(static_cast<size_t>(g.n())), A(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        const double xp = g.x(i) - x0;
        const double xm = g.x(i) + x0;
        const double gp = std::exp(-0.5 * xp * xp);
        const double gm = std::exp(-0.5 * xm * xm);
        S[static_cast<size_t>(i)] = gp + gm;
        A[static_cast<size_t>(i)] = gp - gm;
    }
    RealWavefunction ws(g, std::move(S));
    RealWavefunction wa(g, std::move(A));
    ws.normalize();
    wa.normalize();
    return DualPair::from_components(std::move(ws), std::move(wa));
}

std::pair<DualPair, SolverReport> solve_dual_ground(const CondensateConfig& config,
                                                    const Potential& pot,
                                                    const DualPair* warm_start,
                                                    bool record_history) {
    config.validate();
    require_symmetric(pot.grid, "solve_dual_ground");
    if (config.n_particles % 2 != 0)
        throw std::invalid_argument("solve_dual_ground: N must be even (N1 = N2 = N/2)");
    if (config.n1 != config.n2)
        throw std::invalid_argument("solve_dual_ground: requires the symmetric split N1 = N2");

    DualProblem prob(config, pot);
    const double h = prob.h;

    std::vector<double> S, A;
    if (warm_start) {
        require_same_grid(warm_start->phi1.grid, pot.grid, "solve_dual_ground warm start");
        S = warm_start->symmetric_component().values;
        A = warm_start->antisymmetric_component().values;
    } else {
        DualPair guess = default_dual_guess(pot);
        S = guess.symmetric_component().values;
        A = guess.antisymmetric_component().values;
    }
    prob.postprocess_sym(S);
    prob.postprocess_asym(A);

    SolverReport rep;
    double dt = config.dt_imag;
    PentaLDLT precond(shifted_operator(prob.kinetic, pot.values, dt));
    auto refactor = [&]() { precond = PentaLDLT(shifted_operator(prob.kinetic, pot.values, dt)); };

    std::vector<double> p1, p2, h1, h2, gS, gA, wS, wA, trialS, trialA, tp1, tp2;
    prob.combine(S, A, p1, p2);
    double e_prev = prob.energy(p1, p2);
    double last_de = std::numeric_limits<double>::infinity();
    double mu1 = 0.0;
    bool fine_phase = false;
    double e_anchor = 0.0;

    auto take_step = [&](double step_dt) {
        precond.solve(gS, wS);
        precond.solve(gA, wA);
        trialS = S;
        trialA = A;
        for (size_t i = 0; i < S.size(); ++i) {
            trialS[i] -= step_dt * wS[i];
            trialA[i] -= step_dt * wA[i];
        }
        prob.postprocess_sym(trialS);
        prob.postprocess_asym(trialA);
        prob.combine(trialS, trialA, tp1, tp2);
        return prob.energy(tp1, tp2);
    };
    auto accept_step = [&](double e_trial) {
        last_de = std::abs(e_prev - e_trial);
        S.swap(trialS);
        A.swap(trialA);
        p1.swap(tp1);
        p2.swap(tp2);
        e_prev = e_trial;
    };

    long long iter = 0;
    for (; iter < config.max_iters; ++iter) {
        prob.apply_heff(p1, p2, h1, h2);
        mu1 = dot_h(p1, h1, h);
        const double c = 1.0 / std::sqrt(2.0);
        gS.resize(h1.size());
        gA.resize(h1.size());
        for (size_t i = 0; i < h1.size(); ++i) {
            gS[i] = c * (h1[i] + h2[i]);
            gA[i] = c * (h1[i] - h2[i]);
        }
        parity_project(pot.grid, gS, true);
        parity_project(pot.grid, gA, false);
        const double csS = dot_h(gS, S, h);
        const double csA = dot_h(gA, A, h);
        for (size_t i = 0; i < gS.size(); ++i) {
            gS[i] -= csS * S[i];
            gA[i] -= csA * A[i];
        }
        const double resid = std::sqrt(dot_h(gS, gS, h) + dot_h(gA, gA, h));
        if (record_history) rep.energy_history.push_back({iter, e_prev, resid});
        if (resid <= config.tol_gradient && last_de <= config.tol_energy) {
            rep.converged = true;
            rep.residual = resid;
            break;
        }
        rep.residual = resid;

        const double noise_floor = 64.0 * 2.2e-16 * std::max(1.0, std::abs(e_prev));
        if (!fine_phase && dt * resid * resid <= noise_floor) {
            fine_phase = true;
            e_anchor = e_prev;
        }

        bool accepted = false;
        if (fine_phase) {
            const double e_trial = take_step(dt);
            if (e_trial > e_anchor + 1e-7 * std::max(1.0, std::abs(e_anchor))) {
                dt *= 0.5; // reject and retry at a stable step size
                refactor();
                if (dt < kDtMin) break;
                continue;
            }
            accept_step(e_trial);
            e_anchor = std::min(e_anchor, e_trial);
            accepted = true;
        } else {
            while (dt >= kDtMin) {
                const double e_trial = take_step(dt);
                if (e_trial <= e_prev + 1e-13 * std::max(1.0, std::abs(e_prev))) {
                    accept_step(e_trial);
                    accepted = true;
                    break;
                }
                dt *= 0.5;
                refactor();
            }
            if (accepted && dt < kDtMax) {
                dt = std::min(dt * kDtGrow, kDtMax);
                refactor();
            }
        }
        if (!accepted) break;
    }

    rep.iterations = iter;
    rep.final_energy = e_prev;
    rep.chemical_potential = mu1;
    DualPair out = DualPair::from_components(RealWavefunction(pot.grid, std::move(S)),
                                             RealWavefunction(pot.grid, std::move(A)));
    return {std::move(out), std::move(rep)};
}

} // namespace condfrag
