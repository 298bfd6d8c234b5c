#pragma once

namespace crdme {

/// Well-mixed bimolecular rate constant matching a Doi pair (lambda, rb):
/// lambda times the reactive volume, lambda * pi * rb^2 in 2-d and
/// lambda * (4/3) pi rb^3 in 3-d. Other dimensions are rejected.
double well_mixed_rate(double lambda, double rb, int dim);

/// Diffusion-limited steady-state Doi reaction rate in 3-d,
///   k = 4 pi D rb (1 - sqrt(D/lambda)/rb * tanh(rb sqrt(lambda/D))).
/// Monotone in lambda with limit 4 pi D rb as lambda -> infinity.
double k_doi(double D, double rb, double lambda);

}  // namespace crdme
