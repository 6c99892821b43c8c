#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "oplab/influence.hpp"

namespace oplab {

/// Geometry of the analysis domain: the interval [0, L] with uniform agent
/// density rho0 = 1/L, interaction radius R0, and N agents.
struct DomainParams {
    double length = 10.0;  // L
    double radius = 1.0;   // R0
    int n_agents = 500;    // N

    double density() const { return 1.0 / length; }  // rho0
};

/// Discrete frequencies q_n = 2 pi n R0 / L, n >= 1, capped at q_cap.
/// These are the torus wavenumbers expressed in the dimensionless variable
/// q = k R0 the growth-rate profile uses.
struct FrequencyGrid {
    std::vector<double> entries;
    double cap = 100.0;

    static FrequencyGrid for_domain(const DomainParams& dom, double q_cap = 100.0);
    double spacing(const DomainParams& dom) const;
};

/// Everything the linear theory predicts for one (shape, sigma, domain)
/// triple. Cluster fields are meaningful only in the unstable regime.
struct StabilityReport {
    enum class Regime { unstable, stable };

    Regime regime = Regime::unstable;
    double sigma = 0.0;    // noise strength the analysis ran at
    double sigma_c = 0.0;  // critical noise strength

    double q_max = 0.0;
    double k_max = 0.0;  // q_max / R0
    double psi_at_max = 0.0;
    double gamma_max = 0.0;
    std::vector<std::pair<double, double>> local_maxima;  // (q, psi_sigma), by value desc
    double t_clu = 0.0;
    double cluster_spacing = 0.0;  // 2 pi R0 / q_max
    double cluster_count = 0.0;    // L q_max / (2 pi R0)
    double m_c = 0.0;              // agent fraction per cluster
    double cluster_width = 0.0;    // sigma / sqrt(m_c phi0(0))
    bool consensus_possible = false;
    double gamma_curvature = 0.0;  // d^2 gamma / dk^2 at k_max, <= 0 at a maximum

    bool unstable() const { return regime == Regime::unstable; }
};

/// Normalized growth-rate profile psi(q) = 2 q integral phi0(s) s sin(qs) ds.
/// Even in q, psi(0) = 0.
double psi(const InfluenceShape& shape, double q);

/// Noisy profile psi_sigma(q) = psi(q) - sigma^2 q^2 / (2 rho0 R0^3).
double psi_sigma(const InfluenceShape& shape, double q, double sigma,
                 const DomainParams& dom);

/// Growth rate of wavenumber k: gamma_k = rho0 R0 psi_sigma(k R0).
double growth_rate(const InfluenceShape& shape, double k, double sigma,
                   const DomainParams& dom);

/// Noise strength above which every mode decays:
/// sigma_c = sqrt(4 rho0 R0^3 integral s^2 phi0(s) ds).
double critical_sigma(const InfluenceShape& shape, const DomainParams& dom);

/// Onset of clustering, t_clu = ln(N) / (2 gamma_max).
/// Throws NotUnstable when gamma_max <= 0.
double cluster_onset_time(int n_agents, double gamma_max);

struct QmaxResult {
    double q_max = 0.0;
    double psi_at_max = 0.0;
    std::vector<std::pair<double, double>> local_maxima;
};

/// Grid argmax of psi_sigma; ties break toward the smallest q. local_maxima
/// holds every interior grid point strictly above both neighbors, sorted by
/// descending psi_sigma. Throws AllModesStable when no grid entry is
/// positive (the sigma >= sigma_c regime).
QmaxResult find_qmax(const InfluenceShape& shape, double sigma,
                     const DomainParams& dom, const FrequencyGrid& grid);

/// Optional continuous refinement: golden-section maximization of psi_sigma
/// on [q_lo, q_hi]. Not used by the grid-based reports.
std::pair<double, double> refine_qmax(const InfluenceShape& shape, double sigma,
                                      const DomainParams& dom, double q_lo, double q_hi);

/// Central second difference of an arbitrary gamma(k) profile.
double curvature_central(const std::function<double(double)>& gamma_of_k,
                         double k, double h);

/// d^2 gamma / dk^2 at k_max with fixed step h = 1e-3 / R0.
double gamma_curvature(const InfluenceShape& shape, double sigma,
                       const DomainParams& dom, double k_max);

/// Full report for one parameter set; spacing/count/width/curvature are
/// derived from the grid maximizer. The stable regime is reported, not thrown.
StabilityReport predict_clusters(const InfluenceShape& shape, double sigma,
                                 const DomainParams& dom, double q_cap = 100.0);
StabilityReport predict_clusters(const InfluenceShape& shape, double sigma,
                                 const DomainParams& dom, const FrequencyGrid& grid);

enum class OuVarianceForm {
    exact,    // e^{2 gamma t} + sigma^2 k^2 (e^{2 gamma t} - 1) / (2 gamma)
    printed,  // e^{2 gamma t} [1 + sigma^2 k^2 / (2 gamma)]
};

/// Second moment of the mode-k fluctuation at time t. The exact form is the
/// integrated OU variance and is the default; the printed form is kept for
/// comparison plots. The gamma -> 0 limit, 1 + sigma^2 k^2 t, is handled.
double predicted_mode_variance(double k, double t, double sigma, double gamma_k,
                               OuVarianceForm form = OuVarianceForm::exact);

enum class CovarianceRegime {
    gaussian_envelope,  // L^2 > 4 |gamma''| t: modulated carrier under a Gaussian envelope
    single_mode,        // otherwise: the maximal mode alone
};

struct DensityCovariance {
    double value = 0.0;
    CovarianceRegime regime = CovarianceRegime::single_mode;
};

/// Two-point covariance of the density fluctuation at separation dx and
/// time t > 0, in whichever of the two asymptotic regimes applies.
DensityCovariance predicted_density_covariance(double t, double dx,
                                               const DomainParams& dom,
                                               const StabilityReport& report);

} // namespace oplab
