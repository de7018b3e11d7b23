#pragma once

// entropies, divergences, purification, and skew information

#include <optional>

#include "traceforge/linalg.hpp"

namespace traceforge {

struct DivergenceResult {
    double value = 0.0;                 // +infinity iff support fails
    bool support_condition_met = true;
};

// -tr[p log p] in nats; unnormalized input allowed
double von_neumann(const PsdMatrix& p);
double von_neumann(const DensityMatrix& rho);

// tr[X (log X - log Y)]; relative support defect above tol::support_defect
// yields an infinite result
DivergenceResult umegaki(const PsdMatrix& x, const PsdMatrix& y);

// power-mean approximant (1 - tr[Y^{1-t} X^t]) / (1 - t), t < 1
double umegaki_power_approximant(const PsdMatrix& x, const PsdMatrix& y,
                                 double t);

// tr[Y log(Y^{1/2} X^{-1} Y^{1/2})]; both arguments must be positive definite
double bs_entropy(const PsdMatrix& y, const PsdMatrix& x);

// (1/(alpha-1)) log tr[(s^e r s^e)^alpha], e = (1-alpha)/(2 alpha);
// alpha = 1 is rejected (use umegaki), alpha > 1 needs positive definite sigma
double sandwiched_renyi(const PsdMatrix& rho, const PsdMatrix& sigma,
                        double alpha);

double classical_kl(const RealVector& p, const RealVector& q);

struct EntropyVector {
    double s1 = 0, s2 = 0, s3 = 0;
    double s12 = 0, s13 = 0, s23 = 0;
    double s123 = 0;
};

// all marginal entropies of a three-factor state; each value is validated
// against [0, log dim] up to slack
EntropyVector subsystem_entropies(const DensityMatrix& rho,
                                  const FactorDims& dims);

// S(rest | conditioned) = S_12 - S_conditioned on a two-factor state
double conditional_entropy(const DensityMatrix& rho, const FactorDims& dims,
                           int conditioned);

// I(1;2|3) = S_13 + S_23 - S_123 - S_3
double cmi(const DensityMatrix& rho, const FactorDims& dims);

// tr[H^2 rho] - tr[H rho^{1/2} H rho^{1/2}]
double skew_information(const PsdMatrix& rho, const Matrix& h);

// rank-one vector on C^n (x) C^n whose two marginals both equal rho exactly
Vector purify(const DensityMatrix& rho);

// max{S_1 - S_12, S_2 - S_12, 0} on a two-factor state
double squashed_lb(const DensityMatrix& rho, const FactorDims& dims);

} // namespace traceforge
