#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crdme/samples.hpp"

namespace crdme {

/// Reaction-time ensemble plus the metadata needed to reproduce it. Times
/// are sorted ascending (censored entries sit at their cap time); flags
/// stay paired with times.
struct ReactionTimeSamples {
    std::vector<double> times;
    std::vector<bool> censored;
    std::string config_digest;
    uint64_t master_seed = 0;
    uint64_t replicates = 0;

    static ReactionTimeSamples from(const std::vector<Sample>& raw,
                                    std::string config_digest, uint64_t master_seed);

    uint64_t censored_count() const;
};

/// Empirical CDF of the reaction times: F(t) = (uncensored samples <= t) / n
/// with n the total sample count, plus pointwise Greenwood 95% bands
/// clipped to [0, 1]. Curve points are the distinct uncensored times.
struct EcdfCurve {
    std::vector<double> t;
    std::vector<double> f;
    std::vector<double> lo95;
    std::vector<double> hi95;
};

EcdfCurve ecdf(const ReactionTimeSamples& samples);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;  // 95% unless another level is requested
};

/// Sample mean with a normal-approximation confidence interval. Censored
/// samples make the mean undefined; throws std::invalid_argument if any are
/// present. level is the two-sided coverage, default 0.95.
MeanCi mean_ci(const ReactionTimeSamples& samples, double level = 0.95);

inline bool ci_overlap(const MeanCi& a, const MeanCi& b)
{
    const double gap = a.mean > b.mean ? a.mean - b.mean : b.mean - a.mean;
    return gap <= a.half_width + b.half_width;
}

/// Absolute successive differences |m_{k+1} - m_k| of a mean sequence
/// ordered coarse to fine; used for mesh-refinement studies.
std::vector<double> successive_diffs(const std::vector<double>& means);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares fit of y against ln(1/h); a positive slope with high R^2 is
/// the signature of logarithmic divergence in the mesh parameter.
LineFit log_divergence_fit(const std::vector<double>& h, const std::vector<double>& y);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// Q_KS((sqrt(ne) + 0.12 + 0.11/sqrt(ne)) * D), ne = n1 n2 / (n1 + n2).
KsResult ks_two_sample(const std::vector<double>& x, const std::vector<double>& y);

/// Inverse standard normal CDF (Acklam's rational approximation, refined by
/// one Halley step; absolute error well under 1e-9).
double inverse_normal_cdf(double p);

}  // namespace crdme
