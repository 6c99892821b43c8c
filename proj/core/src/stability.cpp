#include "oplab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oplab/errors.hpp"

namespace oplab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

FrequencyGrid FrequencyGrid::for_domain(const DomainParams& dom, double q_cap) {
    if (q_cap <= 0.0) {
        throw std::invalid_argument("FrequencyGrid: q_cap must be positive");
    }
    FrequencyGrid grid;
    grid.cap = q_cap;
    const double step = two_pi * dom.radius / dom.length;
    for (int n = 1; n * step <= q_cap; ++n) {
        grid.entries.push_back(n * step);
    }
    return grid;
}

double FrequencyGrid::spacing(const DomainParams& dom) const {
    return two_pi * dom.radius / dom.length;
}

double psi(const InfluenceShape& shape, double q) {
    return 2.0 * q * shape.integral_s_sin(q);
}

double psi_sigma(const InfluenceShape& shape, double q, double sigma,
                 const DomainParams& dom) {
    const double damping =
        sigma * sigma * q * q / (2.0 * dom.density() * std::pow(dom.radius, 3));
    return psi(shape, q) - damping;
}

double growth_rate(const InfluenceShape& shape, double k, double sigma,
                   const DomainParams& dom) {
    return dom.density() * dom.radius * psi_sigma(shape, k * dom.radius, sigma, dom);
}

double critical_sigma(const InfluenceShape& shape, const DomainParams& dom) {
    return std::sqrt(4.0 * dom.density() * std::pow(dom.radius, 3) * shape.second_moment());
}

double cluster_onset_time(int n_agents, double gamma_max) {
    if (n_agents < 2) {
        throw std::invalid_argument("cluster_onset_time: need at least two agents");
    }
    if (gamma_max <= 0.0) {
        throw NotUnstable("cluster_onset_time: gamma_max <= 0, no clustering onset");
    }
    return std::log(static_cast<double>(n_agents)) / (2.0 * gamma_max);
}

QmaxResult find_qmax(const InfluenceShape& shape, double sigma,
                     const DomainParams& dom, const FrequencyGrid& grid) {
    if (grid.entries.empty()) {
        throw std::invalid_argument("find_qmax: empty frequency grid");
    }
    std::vector<double> values(grid.entries.size());
    for (std::size_t i = 0; i < grid.entries.size(); ++i) {
        values[i] = psi_sigma(shape, grid.entries[i], sigma, dom);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {  // strict: ties keep the smaller q
            best = i;
        }
    }
    if (values[best] <= 0.0) {
        throw AllModesStable("find_qmax: psi_sigma <= 0 on the whole grid (sigma = " +
                             std::to_string(sigma) + " >= sigma_c regime)");
    }

    QmaxResult result;
    result.q_max = grid.entries[best];
    result.psi_at_max = values[best];
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
            result.local_maxima.emplace_back(grid.entries[i], values[i]);
        }
    }
    std::stable_sort(result.local_maxima.begin(), result.local_maxima.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return result;
}

std::pair<double, double> refine_qmax(const InfluenceShape& shape, double sigma,
                                      const DomainParams& dom, double q_lo, double q_hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = q_lo, b = q_hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = psi_sigma(shape, c, sigma, dom);
    double fd = psi_sigma(shape, d, sigma, dom);
    for (int iter = 0; iter < 200 && (b - a) > 1e-12; ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = psi_sigma(shape, c, sigma, dom);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = psi_sigma(shape, d, sigma, dom);
        }
    }
    const double q = 0.5 * (a + b);
    return {q, psi_sigma(shape, q, sigma, dom)};
}

double curvature_central(const std::function<double(double)>& gamma_of_k,
                         double k, double h) {
    return (gamma_of_k(k + h) - 2.0 * gamma_of_k(k) + gamma_of_k(k - h)) / (h * h);
}

double gamma_curvature(const InfluenceShape& shape, double sigma,
                       const DomainParams& dom, double k_max) {
    const double h = 1e-3 / dom.radius;
    return curvature_central(
        [&](double k) { return growth_rate(shape, k, sigma, dom); }, k_max, h);
}

StabilityReport predict_clusters(const InfluenceShape& shape, double sigma,
                                 const DomainParams& dom, double q_cap) {
    return predict_clusters(shape, sigma, dom, FrequencyGrid::for_domain(dom, q_cap));
}

StabilityReport predict_clusters(const InfluenceShape& shape, double sigma,
                                 const DomainParams& dom, const FrequencyGrid& grid) {
    StabilityReport report;
    report.sigma = sigma;
    report.sigma_c = critical_sigma(shape, dom);

    QmaxResult qmax;
    try {
        qmax = find_qmax(shape, sigma, dom, grid);
    } catch (const AllModesStable&) {
        report.regime = StabilityReport::Regime::stable;
        return report;
    }

    report.regime = StabilityReport::Regime::unstable;
    report.q_max = qmax.q_max;
    report.k_max = qmax.q_max / dom.radius;
    report.psi_at_max = qmax.psi_at_max;
    report.local_maxima = std::move(qmax.local_maxima);
    report.gamma_max = dom.density() * dom.radius * report.psi_at_max;
    report.t_clu = cluster_onset_time(dom.n_agents, report.gamma_max);
    report.cluster_spacing = two_pi * dom.radius / report.q_max;
    report.cluster_count = dom.length * report.q_max / (two_pi * dom.radius);
    report.m_c = dom.density() * report.cluster_spacing;
    const double phi_zero = shape.at_zero();
    report.cluster_width =
        phi_zero > 0.0 ? sigma / std::sqrt(report.m_c * phi_zero) : 0.0;
    report.consensus_possible = report.q_max > two_pi;
    report.gamma_curvature = gamma_curvature(shape, sigma, dom, report.k_max);
    return report;
}

double predicted_mode_variance(double k, double t, double sigma, double gamma_k,
                               OuVarianceForm form) {
    if (t < 0.0) {
        throw std::invalid_argument("predicted_mode_variance: t must be >= 0");
    }
    const double s2k2 = sigma * sigma * k * k;
    if (form == OuVarianceForm::printed) {
        return std::exp(2.0 * gamma_k * t) * (1.0 + s2k2 / (2.0 * gamma_k));
    }
    if (gamma_k == 0.0) {
        return 1.0 + s2k2 * t;
    }
    // expm1 keeps the integrated-noise term accurate through gamma -> 0.
    return std::exp(2.0 * gamma_k * t) + s2k2 * std::expm1(2.0 * gamma_k * t) / (2.0 * gamma_k);
}

DensityCovariance predicted_density_covariance(double t, double dx,
                                               const DomainParams& dom,
                                               const StabilityReport& report) {
    if (t <= 0.0) {
        throw std::invalid_argument("predicted_density_covariance: t must be positive");
    }
    if (!report.unstable()) {
        throw NotUnstable("predicted_density_covariance: stable regime has no growing mode");
    }
    const double L = dom.length;
    const double growth = std::exp(2.0 * report.gamma_max * t);
    const double carrier = std::cos(report.k_max * dx);
    const double spread = 4.0 * std::abs(report.gamma_curvature) * t;

    DensityCovariance cov;
    if (L * L > spread && spread > 0.0) {
        cov.regime = CovarianceRegime::gaussian_envelope;
        cov.value = growth * carrier / L / std::sqrt(std::numbers::pi * spread / 4.0) *
                    std::exp(-dx * dx / spread);
    } else {
        cov.regime = CovarianceRegime::single_mode;
        cov.value = 2.0 / (L * L) * growth * carrier;
    }
    return cov;
}

} // namespace oplab
