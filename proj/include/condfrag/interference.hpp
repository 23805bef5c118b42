#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "condfrag/grid.hpp"
#include "condfrag/wavefunction.hpp"

namespace condfrag {

enum class DetectionMode { single, dual };

std::string to_string(DetectionMode m);

struct ExpansionConfig {
    int pad_factor = 4;        // initial enlargement; doubled until wrap_tol holds
    double wrap_tol = 1e-8;    // max probability mass allowed in the guard band
    int max_points = 1 << 18;  // enlargement cap; exceeding it is the error path
};

/// Freely expanded orbital(s) at time t on an enlarged grid, plus the
/// far-field fringe parameters derived from the release state.
struct ExpansionSnapshot {
    DetectionMode mode = DetectionMode::dual;
    double t = 0.0;
    Grid grid;                                 // enlarged grid
    std::vector<ComplexWavefunction> orbitals; // [phi_s_t] or [phi_l_t, phi_r_t]
    double separation_d = 0.0; // centroid separation of the release lobes
    double fringe_k = 0.0;     // d / t (0 at t = 0)
    double overlap = 0.0;      // integral of |phi_l_t| |phi_r_t|
};

/// Evolve under the free Schroedinger equation (U = 0, g = 0) by split-step
/// Fourier on the same (periodic) grid; exact for free evolution up to
/// discretization, exactly norm-preserving.
ComplexWavefunction free_evolve(const ComplexWavefunction& psi, double t);

/// Free expansion after trap release: embeds each orbital in an enlarged
/// grid, evolves to time t, and records fringe parameters. For single mode
/// pass {phi_s}; for dual pass {phi_l, phi_r}. Throws when the evolved state
/// reaches the guard band of the enlarged grid (t too large for pad_factor).
ExpansionSnapshot free_expand(DetectionMode mode, const std::vector<RealWavefunction>& release,
                              double t, const ExpansionConfig& cfg = {});

/// Smallest t on a 0.25-step scan with lobe-modulus overlap >= target.
double choose_expansion_time(DetectionMode mode, const std::vector<RealWavefunction>& release,
                             double overlap_target, const ExpansionConfig& cfg = {});

/// Conditional many-body state over two-mode Fock states after m detections:
/// coefficients c_j on |N1-j, N2-(m-j)> for j = 0..m, kept normalized.
class ConditionalState {
public:
    ConditionalState(long long n1, long long n2);

    long long n1() const { return n1_; }
    long long n2() const { return n2_; }
    int detections() const { return static_cast<int>(c_.size()) - 1; }
    long long remaining() const { return n1_ + n2_ - detections(); }
    const std::vector<std::complex<double>>& coefficients() const { return c_; }

    /// Scalar weights of the next-detection density
    /// p(x) ~ a_ll |phi_l|^2 + a_rr |phi_r|^2 + 2 Re[a_lr phi_l conj(phi_r)].
    struct DensityWeights {
        double a_ll = 0.0;
        double a_rr = 0.0;
        std::complex<double> a_lr{0.0, 0.0};
    };
    DensityWeights density_weights() const;

    /// Collapse after a detection with mode amplitudes (phi_l(x), phi_r(x)).
    void record_detection(std::complex<double> amp_l, std::complex<double> amp_r);

    double normalization_error() const;

private:
    long long n1_;
    long long n2_;
    std::vector<std::complex<double>> c_;
};

/// Probability density of the next detection at each grid point, normalized
/// so its grid integral is one. Single mode: |phi_s_t|^2 independent of
/// history. Throws when every particle has been detected.
std::vector<double> detection_density(const ConditionalState& state,
                                      const ExpansionSnapshot& snapshot);

struct DetectionRun {
    std::vector<double> positions;
    DetectionMode mode = DetectionMode::dual;
    std::uint64_t seed = 0;
    double theta = 0.0; // estimated fringe phase in (-pi, pi]
    double fringe_k = 0.0;
    double order_magnitude = 0.0; // |sum exp(i k x_j)| / M
    bool phase_confident = false;
};

struct PhaseEstimate {
    double theta = 0.0;
    double magnitude = 0.0; // normalized to [0, 1]
    bool confident = false; // magnitude >= 2/sqrt(M)
};

/// theta = arg(sum_j exp(i k x_j)) mapped to (-pi, pi]. A near-zero order
/// parameter is flagged, not thrown.
PhaseEstimate estimate_phase(const std::vector<double>& positions, double k);

/// Draw M positions sequentially by inverse-CDF sampling of the detection
/// density, collapsing the conditional state after each draw. Deterministic
/// for a given seed. M must not exceed n1 + n2. Single mode uses n2 = 0.
DetectionRun sample_run(const ExpansionSnapshot& snapshot, long long n1, long long n2,
                        long long detections, std::uint64_t seed);

/// Symmetric-split convenience: N1 = N2 = N/2 for dual, (N, 0) for single.
DetectionRun sample_run_symmetric(const ExpansionSnapshot& snapshot, long long total_particles,
                                  long long detections, std::uint64_t seed);

enum class PhaseVerdict { insufficient_runs, uniform, concentrated, inconclusive };

std::string to_string(PhaseVerdict v);

struct EnsembleStats {
    int n_runs = 0;
    double circular_mean = 0.0;
    double resultant_length = 0.0; // R = |mean of exp(i theta)|
    double rayleigh_p = 1.0;
    double uniform_threshold = 0.0;
    double concentration_threshold = 0.9;
    PhaseVerdict verdict = PhaseVerdict::insufficient_runs;
};

struct EnsembleOptions {
    double rayleigh_alpha = 0.05;
    double uniform_safety = 1.5; // verdict threshold = safety * sqrt(-ln alpha / n)
    double concentration_threshold = 0.9;
};

/// Circular statistics of the per-run phases; all runs must share a mode.
EnsembleStats ensemble_stats(const std::vector<DetectionRun>& runs,
                             const EnsembleOptions& opts = {});

} // namespace condfrag
