#include "condfrag/interference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "condfrag/fft.hpp"
#include "condfrag/rng.hpp"

namespace condfrag {

std::string to_string(DetectionMode m) {
    return m == DetectionMode::single ? "single" : "dual";
}

std::string to_string(PhaseVerdict v) {
    switch (v) {
        case PhaseVerdict::insufficient_runs: return "insufficient-runs";
        case PhaseVerdict::uniform: return "uniform";
        case PhaseVerdict::concentrated: return "concentrated";
        case PhaseVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

ComplexWavefunction free_evolve(const ComplexWavefunction& psi, double t) {
    if (t < 0.0) throw std::invalid_argument("free_evolve: t must be >= 0");
    const std::size_t n = psi.values.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("free_evolve: grid size must be a power of two");
    std::vector<std::complex<double>> a = psi.values;
    fft_inplace(a, false);
    const double dk = 2.0 * M_PI / (static_cast<double>(n) * psi.grid.dx());
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = j <= n / 2 ? static_cast<double>(j)
                                     : static_cast<double>(j) - static_cast<double>(n);
        const double k = jj * dk;
        const double phase = -0.5 * k * k * t;
        a[j] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    fft_inplace(a, true);
    return ComplexWavefunction(psi.grid, std::move(a));
}

namespace {

Grid enlarged_grid(const Grid& g, int pad_factor) {
    if (pad_factor < 1) throw std::invalid_argument("free_expand: pad_factor must be >= 1");
    const std::size_t n_big =
        next_power_of_two(static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(pad_factor));
    const long long extra = static_cast<long long>(n_big) - g.n();
    const long long left_pad = (g.n() % 2 == 0) ? extra / 2 : (extra - 1) / 2;
    const double x_min = g.x_min() - static_cast<double>(left_pad) * g.dx();
    const double x_max = x_min + static_cast<double>(n_big - 1) * g.dx();
    return Grid(static_cast<int>(n_big), x_min, x_max);
}

ComplexWavefunction embed(const RealWavefunction& psi, const Grid& big) {
    std::vector<std::complex<double>> v(static_cast<size_t>(big.n()), {0.0, 0.0});
    const long long off = llround((psi.grid.x_min() - big.x_min()) / big.dx());
    for (int i = 0; i < psi.grid.n(); ++i)
        v[static_cast<size_t>(off + i)] = {psi.values[static_cast<size_t>(i)], 0.0};
    return ComplexWavefunction(big, std::move(v));
}

double guard_band_mass(const ComplexWavefunction& psi) {
    const int n = psi.grid.n();
    const int guard = std::max(2, n / 32);
    double mass = 0.0;
    for (int i = 0; i < guard; ++i) {
        mass += std::norm(psi.values[static_cast<size_t>(i)]);
        mass += std::norm(psi.values[static_cast<size_t>(n - 1 - i)]);
    }
    return mass * psi.grid.dx();
}

double centroid_x(const RealWavefunction& phi) {
    double s = 0.0;
    for (int i = 0; i < phi.grid.n(); ++i) {
        const double q = phi.values[static_cast<size_t>(i)];
        s += phi.grid.x(i) * q * q;
    }
    return s * phi.grid.dx();
}

/// x<0 and x>0 restrictions, renormalized (release lobes of a single
/// doubly-peaked state).
std::pair<RealWavefunction, RealWavefunction> split_halves(const RealWavefunction& phi) {
    std::vector<double> l(phi.values.size(), 0.0), r(phi.values.size(), 0.0);
    for (int i = 0; i < phi.grid.n(); ++i) {
        const double x = phi.grid.x(i);
        if (x < 0.0) l[static_cast<size_t>(i)] = phi.values[static_cast<size_t>(i)];
        if (x > 0.0) r[static_cast<size_t>(i)] = phi.values[static_cast<size_t>(i)];
    }
    RealWavefunction wl(phi.grid, std::move(l));
    RealWavefunction wr(phi.grid, std::move(r));
    wl.normalize();
    wr.normalize();
    return {std::move(wl), std::move(wr)};
}

double modulus_overlap(const ComplexWavefunction& a, const ComplexWavefunction& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) s += std::abs(a.values[i]) * std::abs(b.values[i]);
    return s * a.grid.dx();
}

} // namespace

ExpansionSnapshot free_expand(DetectionMode mode, const std::vector<RealWavefunction>& release,
                              double t, const ExpansionConfig& cfg) {
    if (t < 0.0) throw std::invalid_argument("free_expand: t must be >= 0");
    const size_t expected = mode == DetectionMode::single ? 1 : 2;
    if (release.size() != expected)
        throw std::invalid_argument("free_expand: expected " + std::to_string(expected) +
                                    " release orbital(s)");
    for (const auto& phi : release) {
        require_same_grid(phi.grid, release.front().grid, "free_expand");
        if (!phi.is_normalized(1e-6))
            throw std::invalid_argument("free_expand: release orbitals must be normalized");
    }

    // release lobes for the fringe diagnostics
    RealWavefunction lobe_l = release.front();
    RealWavefunction lobe_r = release.front();
    if (mode == DetectionMode::dual) {
        const bool first_is_left = centroid_x(release[0]) <= centroid_x(release[1]);
        lobe_l = release[first_is_left ? 0 : 1];
        lobe_r = release[first_is_left ? 1 : 0];
    } else {
        auto halves = split_halves(release.front());
        lobe_l = std::move(halves.first);
        lobe_r = std::move(halves.second);
    }

    // enlarge until the wraparound mass in the guard band is within
    // tolerance; nodal release states carry slow momentum tails and need
    // far more room than smooth ones
    double worst_mass = 0.0;
    for (int pad = std::max(1, cfg.pad_factor);; pad *= 2) {
        const Grid big = enlarged_grid(release.front().grid, pad);
        if (big.n() > cfg.max_points)
            throw std::runtime_error(
                "free_expand: evolved state reaches the grid boundary even at " +
                std::to_string(cfg.max_points) + " points (guard-band mass " +
                std::to_string(worst_mass) + "); reduce t or raise max_points");

        ExpansionSnapshot snap{mode, t, big, {}, 0.0, 0.0, 0.0};
        snap.separation_d = centroid_x(lobe_r) - centroid_x(lobe_l);
        snap.fringe_k = t > 0.0 ? snap.separation_d / t : 0.0;

        ComplexWavefunction pl = free_evolve(embed(lobe_l, big), t);
        ComplexWavefunction pr = free_evolve(embed(lobe_r, big), t);
        if (mode == DetectionMode::dual) {
            worst_mass = std::max(guard_band_mass(pl), guard_band_mass(pr));
            if (worst_mass > cfg.wrap_tol) continue;
            snap.overlap = modulus_overlap(pl, pr);
            snap.orbitals.push_back(std::move(pl));
            snap.orbitals.push_back(std::move(pr));
        } else {
            ComplexWavefunction ps = free_evolve(embed(release.front(), big), t);
            worst_mass = guard_band_mass(ps);
            if (worst_mass > cfg.wrap_tol) continue;
            snap.overlap = modulus_overlap(pl, pr); // independently expanded halves
            snap.orbitals.push_back(std::move(ps));
        }
        return snap;
    }
}

double choose_expansion_time(DetectionMode mode, const std::vector<RealWavefunction>& release,
                             double overlap_target, const ExpansionConfig& cfg) {
    if (!(overlap_target > 0.0) || overlap_target > 1.0)
        throw std::invalid_argument("choose_expansion_time: target must be in (0, 1]");
    for (double t = 0.25; t <= 1024.0; t += 0.25) {
        try {
            const ExpansionSnapshot snap = free_expand(mode, release, t, cfg);
            if (snap.overlap >= overlap_target) return t;
        } catch (const std::runtime_error&) {
            throw std::runtime_error(
                "choose_expansion_time: lobes never overlapped enough before reaching the "
                "enlarged grid boundary; increase pad_factor or lower overlap_target");
        }
    }
    throw std::runtime_error("choose_expansion_time: overlap target not reached");
}

// ---------------------------------------------------------------------------
// Conditional detection
// ---------------------------------------------------------------------------

ConditionalState::ConditionalState(long long n1, long long n2) : n1_(n1), n2_(n2) {
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1)
        throw std::invalid_argument("ConditionalState: need N1, N2 >= 0 and N >= 1");
    c_.assign(1, {1.0, 0.0});
}

ConditionalState::DensityWeights ConditionalState::density_weights() const {
    const int m = detections();
    DensityWeights w;
    // coefficients outside the admissible occupation range are structurally
    // zero; skipping them also keeps sqrt() off negative arguments
    for (int j = 0; j <= m; ++j) {
        const long long lr = n1_ - j;
        const long long rr = n2_ - (m - j);
        if (lr < 0 || rr < 0) continue;
        const double pj = std::norm(c_[static_cast<size_t>(j)]);
        w.a_ll += pj * static_cast<double>(lr);
        w.a_rr += pj * static_cast<double>(rr);
    }
    for (int j = 0; j < m; ++j) {
        const long long lr = n1_ - j;
        const long long rr = n2_ - m + j + 1;
        if (lr <= 0 || rr <= 0) continue;
        const double f = std::sqrt(static_cast<double>(lr) * static_cast<double>(rr));
        w.a_lr += c_[static_cast<size_t>(j)] * std::conj(c_[static_cast<size_t>(j + 1)]) * f;
    }
    return w;
}

void ConditionalState::record_detection(std::complex<double> amp_l, std::complex<double> amp_r) {
    if (remaining() <= 0)
        throw std::logic_error("ConditionalState: all particles already detected");
    const int m = detections();
    std::vector<std::complex<double>> next(static_cast<size_t>(m + 2), {0.0, 0.0});
    for (int j = 0; j <= m; ++j) {
        const std::complex<double> cj = c_[static_cast<size_t>(j)];
        const long long left_remaining = n1_ - j;
        const long long right_remaining = n2_ - (m - j);
        if (left_remaining > 0)
            next[static_cast<size_t>(j + 1)] +=
                cj * amp_l * std::sqrt(static_cast<double>(left_remaining));
        if (right_remaining > 0)
            next[static_cast<size_t>(j)] +=
                cj * amp_r * std::sqrt(static_cast<double>(right_remaining));
    }
    double nrm = 0.0;
    for (const auto& q : next) nrm += std::norm(q);
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::runtime_error("ConditionalState: detection amplitude annihilated the state");
    for (auto& q : next) q /= nrm;
    c_ = std::move(next);
}

double ConditionalState::normalization_error() const {
    double s = 0.0;
    for (const auto& q : c_) s += std::norm(q);
    return std::abs(s - 1.0);
}

std::vector<double> detection_density(const ConditionalState& state,
                                      const ExpansionSnapshot& snapshot) {
    if (state.remaining() <= 0)
        throw std::logic_error("detection_density: all particles already detected");
    const size_t n = snapshot.orbitals.front().values.size();
    std::vector<double> p(n, 0.0);
    if (snapshot.mode == DetectionMode::single) {
        const auto& v = snapshot.orbitals.front().values;
        for (size_t i = 0; i < n; ++i) p[i] = std::norm(v[i]);
    } else {
        const auto w = state.density_weights();
        const auto& l = snapshot.orbitals[0].values;
        const auto& r = snapshot.orbitals[1].values;
        for (size_t i = 0; i < n; ++i) {
            const double val = w.a_ll * std::norm(l[i]) + w.a_rr * std::norm(r[i]) +
                               2.0 * std::real(w.a_lr * l[i] * std::conj(r[i]));
            p[i] = val > 0.0 ? val : 0.0; // clip quadrature-noise negatives
        }
    }
    double total = 0.0;
    for (double q : p) total += q;
    total *= snapshot.grid.dx();
    if (!(total > 0.0)) throw std::runtime_error("detection_density: degenerate density");
    for (double& q : p) q /= total;
    return p;
}

PhaseEstimate estimate_phase(const std::vector<double>& positions, double k) {
    if (positions.empty()) throw std::invalid_argument("estimate_phase: empty run");
    if (!(k > 0.0)) throw std::invalid_argument("estimate_phase: k must be > 0");
    double c = 0.0, s = 0.0;
    for (double x : positions) {
        c += std::cos(k * x);
        s += std::sin(k * x);
    }
    PhaseEstimate est;
    const double m = static_cast<double>(positions.size());
    est.magnitude = std::sqrt(c * c + s * s) / m;
    double theta = std::atan2(s, c);
    if (theta <= -M_PI) theta = M_PI;
    est.theta = theta;
    est.confident = est.magnitude >= 2.0 / std::sqrt(m);
    return est;
}

namespace {

std::complex<double> interp_amplitude(const ComplexWavefunction& psi, double x) {
    const Grid& g = psi.grid;
    double u = (x - g.x_min()) / g.dx();
    int i0 = static_cast<int>(std::floor(u));
    i0 = std::clamp(i0, 0, g.n() - 2);
    const double w = u - static_cast<double>(i0);
    return (1.0 - w) * psi.values[static_cast<size_t>(i0)] +
           w * psi.values[static_cast<size_t>(i0 + 1)];
}

} // namespace

DetectionRun sample_run(const ExpansionSnapshot& snapshot, long long n1, long long n2,
                        long long detections, std::uint64_t seed) {
    if (snapshot.mode == DetectionMode::single && n2 != 0)
        throw std::invalid_argument("sample_run: single mode requires N2 = 0");
    if (detections < 0 || detections > n1 + n2)
        throw std::invalid_argument("sample_run: detection count M must satisfy 0 <= M <= N");

    DetectionRun run;
    run.mode = snapshot.mode;
    run.seed = seed;
    run.fringe_k = snapshot.fringe_k;
    if (detections == 0) return run;

    Rng rng(seed);
    ConditionalState state(n1, n2);
    const Grid& g = snapshot.grid;
    const double h = g.dx();
    std::vector<double> density, prefix(static_cast<size_t>(g.n()));
    const bool static_density = snapshot.mode == DetectionMode::single;

    for (long long m = 0; m < detections; ++m) {
        if (m == 0 || !static_density) {
            density = detection_density(state, snapshot);
            double acc = 0.0;
            for (int i = 0; i < g.n(); ++i) {
                acc += density[static_cast<size_t>(i)] * h;
                prefix[static_cast<size_t>(i)] = acc;
            }
        }
        const double total = prefix.back();
        const double u = rng.uniform01() * total;
        const auto it = std::upper_bound(prefix.begin(), prefix.end(), u);
        const size_t cell = std::min(static_cast<size_t>(it - prefix.begin()),
                                     static_cast<size_t>(g.n() - 1));
        const double below = cell == 0 ? 0.0 : prefix[cell - 1];
        const double mass = density[cell] * h;
        const double frac = mass > 0.0 ? (u - below) / mass : 0.5;
        const double x = g.x(static_cast<int>(cell)) + (frac - 0.5) * h;
        run.positions.push_back(x);
        if (snapshot.mode == DetectionMode::dual) {
            state.record_detection(interp_amplitude(snapshot.orbitals[0], x),
                                   interp_amplitude(snapshot.orbitals[1], x));
        }
    }

    const PhaseEstimate est = estimate_phase(run.positions, snapshot.fringe_k);
    run.theta = est.theta;
    run.order_magnitude = est.magnitude;
    run.phase_confident = est.confident;
    return run;
}

DetectionRun sample_run_symmetric(const ExpansionSnapshot& snapshot, long long total_particles,
                                  long long detections, std::uint64_t seed) {
    if (snapshot.mode == DetectionMode::single)
        return sample_run(snapshot, total_particles, 0, detections, seed);
    if (total_particles % 2 != 0)
        throw std::invalid_argument("sample_run_symmetric: dual mode requires even N");
    return sample_run(snapshot, total_particles / 2, total_particles / 2, detections, seed);
}

EnsembleStats ensemble_stats(const std::vector<DetectionRun>& runs, const EnsembleOptions& opts) {
    EnsembleStats st;
    st.n_runs = static_cast<int>(runs.size());
    st.concentration_threshold = opts.concentration_threshold;
    if (!runs.empty()) {
        for (const auto& r : runs)
            if (r.mode != runs.front().mode)
                throw std::invalid_argument("ensemble_stats: mixed single/dual runs");
    }
    if (st.n_runs < 2) {
        st.verdict = PhaseVerdict::insufficient_runs;
        if (st.n_runs == 1) {
            st.circular_mean = runs.front().theta;
            st.resultant_length = 1.0;
        }
        return st;
    }
    double c = 0.0, s = 0.0;
    for (const auto& r : runs) {
        c += std::cos(r.theta);
        s += std::sin(r.theta);
    }
    const double n = static_cast<double>(st.n_runs);
    c /= n;
    s /= n;
    st.resultant_length = std::sqrt(c * c + s * s);
    double mean = std::atan2(s, c);
    if (mean <= -M_PI) mean = M_PI;
    st.circular_mean = mean;
    const double z = n * st.resultant_length * st.resultant_length;
    double p = std::exp(-z) * (1.0 + (2.0 * z - z * z) / (4.0 * n));
    st.rayleigh_p = std::clamp(p, 0.0, 1.0);
    st.uniform_threshold = opts.uniform_safety * std::sqrt(-std::log(opts.rayleigh_alpha)) /
                           std::sqrt(n);
    if (st.resultant_length < st.uniform_threshold)
        st.verdict = PhaseVerdict::uniform;
    else if (st.resultant_length > opts.concentration_threshold)
        st.verdict = PhaseVerdict::concentrated;
    else
        st.verdict = PhaseVerdict::inconclusive;
    return st;
}

} // namespace condfrag
