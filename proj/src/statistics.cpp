#include "crdme/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crdme {

ReactionTimeSamples ReactionTimeSamples::from(const std::vector<Sample>& raw,
                                              std::string config_digest,
                                              uint64_t master_seed)
{
    std::vector<size_t> order(raw.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return raw[a].time < raw[b].time;
    });
    ReactionTimeSamples out;
    out.times.reserve(raw.size());
    out.censored.reserve(raw.size());
    for (size_t idx : order) {
        out.times.push_back(raw[idx].time);
        out.censored.push_back(raw[idx].censored);
    }
    out.config_digest = std::move(config_digest);
    out.master_seed = master_seed;
    out.replicates = raw.size();
    return out;
}

uint64_t ReactionTimeSamples::censored_count() const
{
    uint64_t n = 0;
    for (bool c : censored)
        n += c ? 1 : 0;
    return n;
}

EcdfCurve ecdf(const ReactionTimeSamples& samples)
{
    const double n = static_cast<double>(samples.times.size());
    if (n == 0)
        return {};
    EcdfCurve out;
    const double z = 1.959963984540054;
    uint64_t below = 0;
    for (size_t i = 0; i < samples.times.size();) {
        const double t = samples.times[i];
        size_t j = i;
        while (j < samples.times.size() && samples.times[j] == t) {
            if (!samples.censored[j])
                ++below;
            ++j;
        }
        const bool any_uncensored =
            std::any_of(samples.censored.begin() + i, samples.censored.begin() + j,
                        [](bool c) { return !c; });
        if (any_uncensored) {
            const double f = static_cast<double>(below) / n;
            const double half = z * std::sqrt(f * (1.0 - f) / n);
            out.t.push_back(t);
            out.f.push_back(f);
            out.lo95.push_back(std::max(0.0, f - half));
            out.hi95.push_back(std::min(1.0, f + half));
        }
        i = j;
    }
    return out;
}

MeanCi mean_ci(const ReactionTimeSamples& samples, double level)
{
    if (samples.times.empty())
        throw std::invalid_argument("mean_ci: no samples");
    if (samples.censored_count() > 0)
        throw std::invalid_argument("mean_ci: censored samples present, mean undefined");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("mean_ci: level must be in (0, 1)");
    const double n = static_cast<double>(samples.times.size());
    double mean = 0.0;
    for (double t : samples.times)
        mean += t;
    mean /= n;
    double ss = 0.0;
    for (double t : samples.times) {
        const double d = t - mean;
        ss += d * d;
    }
    const double sd = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const double z = inverse_normal_cdf(0.5 + 0.5 * level);
    return {mean, z * sd / std::sqrt(n)};
}

std::vector<double> successive_diffs(const std::vector<double>& means)
{
    std::vector<double> out;
    for (size_t i = 0; i + 1 < means.size(); ++i)
        out.push_back(std::fabs(means[i + 1] - means[i]));
    return out;
}

LineFit log_divergence_fit(const std::vector<double>& h, const std::vector<double>& y)
{
    if (h.size() != y.size() || h.size() < 2)
        throw std::invalid_argument("log_divergence_fit: need matching series, >= 2 points");
    const size_t n = h.size();
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(h[i] > 0.0))
            throw std::invalid_argument("log_divergence_fit: h must be positive");
        x[i] = std::log(1.0 / h[i]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("log_divergence_fit: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

namespace {

// Kolmogorov asymptotic survival function Q_KS(lambda).
double q_ks(double lambda)
{
    if (lambda < 1e-3)
        return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12 * std::fabs(sum) || std::fabs(term) < 1e-300)
            break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.empty() || y.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> a(x), b(y);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= t)
            ++i;
        while (j < b.size() && b[j] <= t)
            ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    const double ne = na * nb / (na + nb);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    return {d, q_ks(lambda)};
}

double inverse_normal_cdf(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("inverse_normal_cdf: p must be in (0, 1)");

    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r, z;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }
    // One Halley refinement against erfc.
    const double e = 0.5 * std::erfc(-z / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(z * z / 2.0);
    z = z - u / (1.0 + z * u / 2.0);
    return z;
}

}  // namespace crdme
