#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "traceforge/linalg.hpp"
#include "traceforge/rng.hpp"

namespace traceforge {

// integral representations of operator monotone / convex functions
//
//   lowner:  f(x) = beta + gamma*x + sum_k w_k * (1+l_k)*x/(l_k+x)
//   hansen:  f(x) = beta + sum_k w_k * (l_k+1)/(l_k+x)
//   convex:  f(x) = alpha + beta*x + gamma*x^2
//                   + sum_k w_k * (1+l_k)*x^2/(l_k+x)
//
// an atom with at_infinity set contributes the kernel limit instead:
// x (lowner), 1 (hansen), x^2 (convex).

enum class RepKind { lowner, hansen, convex };

struct RepAtom {
    double lambda;
    double weight;
    bool at_infinity = false;
};

struct IntegralRep {
    RepKind kind;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::vector<RepAtom> atoms;

    double eval(double x) const;
};

struct OperatorFunction {
    std::string id;
    double param = 0.0;
    FunctionDomain domain = FunctionDomain::positive_only;
    bool monotone_increasing = false;
    bool monotone_decreasing = false;
    bool convex = false;
    std::function<double(double)> eval;
    // what the stored representation reproduces; shifted variants of
    // eval for functions regularized near zero
    std::function<double(double)> rep_target;
    std::optional<IntegralRep> rep;
    std::string note;
};

OperatorFunction make_power(double t);
OperatorFunction make_identity();
OperatorFunction make_square();
OperatorFunction make_inverse();
OperatorFunction make_neg_log();
OperatorFunction make_x_log_x();
OperatorFunction make_klein();
OperatorFunction make_log_mean();
OperatorFunction make_log_recip();

std::vector<OperatorFunction> function_catalog();

// nodes and weights on [-1, 1]; cached, thread safe
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

// max scaled error |rep.eval(x) - rep_target(x)| / (1 + |rep_target(x)|)
// over a 50 point log grid on [1e-3, 1e3]; 0 when f has no rep
double rep_reproduction_error(const OperatorFunction& f);

// operator evaluation of a representation on a positive definite matrix
Matrix eval_rep(const IntegralRep& rep, const PsdMatrix& x);

// g_f(x, y) = y^{1/2} f(y^{-1/2} x y^{-1/2}) y^{1/2}, y positive definite
Matrix perspective(const OperatorFunction& f, const PsdMatrix& x,
                   const PsdMatrix& y);

// checks the scalar perspective identity atom by atom against
// y * rep_target(x / y); returns the max scaled error over a grid
double scalar_perspective_rep_check(const OperatorFunction& f);

// samples ordered pairs A <= B and returns the most negative eigenvalue
// of f(B) - f(A) (sign flipped for decreasing f); a genuinely monotone
// function stays near zero, a non-monotone one goes clearly negative
double numeric_monotone_test(const OperatorFunction& f, Rng& rng,
                             int samples);

} // namespace traceforge
