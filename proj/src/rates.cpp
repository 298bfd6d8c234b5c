#include "crdme/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crdme {

double well_mixed_rate(double lambda, double rb, int dim)
{
    if (!(lambda >= 0.0) || !(rb > 0.0))
        throw std::invalid_argument("well_mixed_rate: need lambda >= 0 and rb > 0");
    switch (dim) {
    case 2:
        return lambda * std::numbers::pi * rb * rb;
    case 3:
        return lambda * (4.0 / 3.0) * std::numbers::pi * rb * rb * rb;
    default:
        throw std::invalid_argument("well_mixed_rate: dim must be 2 or 3");
    }
}

double k_doi(double D, double rb, double lambda)
{
    if (!(D > 0.0) || !(rb > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("k_doi: D, rb, lambda must be positive");
    const double z = rb * std::sqrt(lambda / D);
    double factor;
    if (z < 1e-4) {
        // 1 - tanh(z)/z = z^2/3 - 2 z^4/15 + O(z^6); the direct form loses
        // all precision to cancellation at small z.
        const double z2 = z * z;
        factor = z2 / 3.0 - 2.0 * z2 * z2 / 15.0;
    } else {
        factor = 1.0 - std::tanh(z) / z;
    }
    return 4.0 * std::numbers::pi * D * rb * factor;
}

}  // namespace crdme
