#include "traceforge/opfunc.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace traceforge {

namespace {

constexpr double pi_v = 3.14159265358979323846;
constexpr double fold_high = 1e12;
constexpr double fold_low = 1e-250;
constexpr double shift_eps = 1e-8;

} // namespace

double IntegralRep::eval(double x) const {
    double acc = 0.0;
    switch (kind) {
    case RepKind::lowner:
        acc = beta + gamma * x;
        for (const auto& a : atoms)
            acc += a.at_infinity
                       ? a.weight * x
                       : a.weight * (1.0 + a.lambda) * x / (a.lambda + x);
        return acc;
    case RepKind::hansen:
        acc = beta;
        for (const auto& a : atoms)
            acc += a.at_infinity
                       ? a.weight
                       : a.weight * (a.lambda + 1.0) / (a.lambda + x);
        return acc;
    case RepKind::convex:
        acc = alpha + beta * x + gamma * x * x;
        for (const auto& a : atoms)
            acc += a.at_infinity
                       ? a.weight * x * x
                       : a.weight * (1.0 + a.lambda) * x * x / (a.lambda + x);
        return acc;
    }
    return acc;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw ParamError("gauss_legendre: n must be positive");

    std::vector<std::pair<double, double>> pts(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi_v * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        pts[i] = {-x, w};
        pts[n - 1 - i] = {x, w};
    }
    return cache.emplace(n, std::move(pts)).first->second;
}

namespace {

struct Panel {
    double a, b;
    int order;
};

// maps [-1,1] nodes onto [a,b] and feeds (node, weight) to the sink
template <typename Sink>
void quad_panel(const Panel& p, Sink&& sink) {
    const auto& base = gauss_legendre(p.order);
    double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
    for (const auto& [z, w] : base) sink(mid + half * z, half * w);
}

void add_lowner_atom(IntegralRep& rep, double lam, double wt) {
    if (lam > fold_high) {
        if (!rep.atoms.empty() && rep.atoms.back().at_infinity)
            rep.atoms.back().weight += wt;
        else
            rep.atoms.push_back({0.0, wt, true});
    } else if (lam < fold_low) {
        rep.beta += wt;
    } else {
        rep.atoms.push_back({lam, wt, false});
    }
}

void add_convex_atom(IntegralRep& rep, double lam, double wt) {
    if (lam > fold_high)
        rep.gamma += wt;
    else if (lam < fold_low)
        rep.beta += wt;
    else
        rep.atoms.push_back({lam, wt, false});
}

// x^t on (0,1) as a lowner measure, x^q = x * x^{q-1} as a convex one;
// the three panels cover [0, 1e-6], [1e-6, 1e6] in log scale, and the
// tail via s = lambda^{t-1}
template <typename AddAtom>
void build_power_measure(IntegralRep& rep, double t, AddAtom&& add) {
    const double c = std::sin(pi_v * t) / pi_v;
    const double delta = 1e-6;

    quad_panel({0.0, 1.0, 16}, [&](double z, double w) {
        double lam = delta * std::pow(z, 1.0 / t);
        add(rep, lam, c * (std::pow(delta, t) / t) * w / (1.0 + lam));
    });
    quad_panel({std::log(1e-6), std::log(1e6), 200}, [&](double u, double w) {
        double lam = std::exp(u);
        add(rep, lam, c * std::pow(lam, t) / (1.0 + lam) * w);
    });
    double s0 = std::pow(1e6, t - 1.0);
    quad_panel({0.0, s0, 16}, [&](double s, double w) {
        double lam = std::pow(s, 1.0 / (t - 1.0));
        add(rep, lam, (c / (1.0 - t)) * lam / (1.0 + lam) * w);
    });
}

} // namespace

OperatorFunction make_power(double t) {
    if (!(t >= 0.0 && t <= 2.0))
        throw ParamError("make_power: exponent must lie in [0,2]");
    OperatorFunction f;
    f.id = "power";
    f.param = t;
    f.domain = FunctionDomain::nonneg_with_zero_rule;
    f.eval = [t](double x) { return pow_entry(x, t); };
    f.rep_target = f.eval;
    f.monotone_increasing = t <= 1.0;
    f.convex = t >= 1.0 || t == 0.0;

    IntegralRep rep;
    if (t == 0.0) {
        rep.kind = RepKind::lowner;
        rep.beta = 1.0;
    } else if (t == 1.0) {
        rep.kind = RepKind::lowner;
        rep.gamma = 1.0;
    } else if (t < 1.0) {
        rep.kind = RepKind::lowner;
        build_power_measure(rep, t, add_lowner_atom);
    } else if (t == 2.0) {
        rep.kind = RepKind::convex;
        rep.gamma = 1.0;
    } else {
        rep.kind = RepKind::convex;
        build_power_measure(rep, t - 1.0, add_convex_atom);
    }
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_identity() {
    OperatorFunction f;
    f.id = "identity";
    f.domain = FunctionDomain::all_reals;
    f.eval = [](double x) { return x; };
    f.rep_target = f.eval;
    f.monotone_increasing = true;
    f.convex = true;
    IntegralRep rep;
    rep.kind = RepKind::lowner;
    rep.gamma = 1.0;
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_square() {
    OperatorFunction f;
    f.id = "square";
    f.domain = FunctionDomain::all_reals;
    f.eval = [](double x) { return x * x; };
    f.rep_target = f.eval;
    f.convex = true;
    IntegralRep rep;
    rep.kind = RepKind::convex;
    rep.gamma = 1.0;
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_inverse() {
    OperatorFunction f;
    f.id = "inverse";
    f.domain = FunctionDomain::positive_only;
    f.eval = [](double x) { return 1.0 / x; };
    f.rep_target = [](double x) { return 1.0 / (x + 1e-12); };
    f.monotone_decreasing = true;
    f.convex = true;
    f.note = "representation carries a 1e-12 shift";
    IntegralRep rep;
    rep.kind = RepKind::hansen;
    rep.atoms.push_back({1e-12, 1.0 / (1.0 + 1e-12), false});
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_neg_log() {
    OperatorFunction f;
    f.id = "neg_log";
    f.domain = FunctionDomain::positive_only;
    f.eval = [](double x) { return -std::log(x); };
    f.rep_target = [](double x) { return -std::log(x + shift_eps); };
    f.monotone_decreasing = true;
    f.convex = true;
    f.note = "representation carries a 1e-8 shift";

    IntegralRep rep;
    rep.kind = RepKind::hansen;
    rep.beta = -std::log1p(shift_eps);
    auto add = [&rep](double lam, double wt) {
        rep.atoms.push_back({lam, wt, false});
        rep.beta -= wt;
    };
    quad_panel({std::log(shift_eps), std::log(1e-6), 16},
               [&](double u, double w) {
                   double lam = std::exp(u);
                   add(lam, w * lam / (1.0 + lam));
               });
    quad_panel({std::log(1e-6), std::log(1e6), 200}, [&](double u, double w) {
        double lam = std::exp(u);
        add(lam, w * lam / (1.0 + lam));
    });
    quad_panel({0.0, 1e-6, 16}, [&](double th, double w) {
        double lam = 1.0 / th;
        add(lam, w * lam * lam / (1.0 + lam));
    });
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_x_log_x() {
    OperatorFunction f;
    f.id = "x_log_x";
    f.domain = FunctionDomain::nonneg_with_zero_rule;
    f.eval = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
    f.rep_target = [](double x) { return x * std::log(x + shift_eps); };
    f.convex = true;
    f.note = "representation carries a 1e-8 shift";

    IntegralRep rep;
    rep.kind = RepKind::convex;
    rep.beta = std::log(shift_eps);
    quad_panel({std::log(shift_eps), std::log(1e-6), 16},
               [&](double u, double w) {
                   double lam = std::exp(u);
                   rep.atoms.push_back({lam, w / (1.0 + lam), false});
               });
    quad_panel({std::log(1e-6), std::log(1e6), 200}, [&](double u, double w) {
        double lam = std::exp(u);
        rep.atoms.push_back({lam, w / (1.0 + lam), false});
    });
    quad_panel({0.0, 1e-6, 16}, [&](double th, double w) {
        double lam = 1.0 / th;
        rep.atoms.push_back({lam, w * lam / (1.0 + lam), false});
    });
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_klein() {
    OperatorFunction f = make_x_log_x();
    f.id = "klein";
    f.eval = [](double x) {
        return x == 0.0 ? 1.0 : x * std::log(x) - x + 1.0;
    };
    f.rep_target = [](double x) {
        return x * std::log(x + shift_eps) - x + 1.0;
    };
    f.rep->alpha += 1.0;
    f.rep->beta -= 1.0;
    return f;
}

OperatorFunction make_log_mean() {
    OperatorFunction f;
    f.id = "log_mean";
    f.domain = FunctionDomain::positive_only;
    f.eval = [](double x) {
        double d = x - 1.0;
        if (std::abs(d) < 1e-4) return 1.0 + 0.5 * d - d * d / 12.0;
        return d / std::log(x);
    };
    f.rep_target = f.eval;
    f.monotone_increasing = true;

    // measure du / (u^2 + pi^2) in u = log(lambda); total mass 1
    IntegralRep rep;
    rep.kind = RepKind::lowner;
    auto add = [&rep](double u, double w) {
        rep.atoms.push_back({std::exp(u), w / (u * u + pi_v * pi_v), false});
    };
    quad_panel({-600.0, -13.8, 48}, add);
    quad_panel({-13.8, 13.8, 200}, add);
    quad_panel({13.8, 600.0, 48}, add);
    double edge = (1.0 / pi_v) * (0.5 * pi_v - std::atan(600.0 / pi_v));
    rep.beta += edge;
    rep.atoms.push_back({0.0, edge, true});
    f.rep = std::move(rep);
    return f;
}

OperatorFunction make_log_recip() {
    OperatorFunction f;
    f.id = "log_recip";
    f.domain = FunctionDomain::positive_only;
    f.eval = [](double x) { return std::log1p(4.0 / x); };
    f.rep_target = f.eval;
    f.monotone_decreasing = true;
    f.convex = true;

    // log(1 + 4/x) = int_0^4 dl / (l + x)
    IntegralRep rep;
    rep.kind = RepKind::hansen;
    quad_panel({0.0, 1e-4, 16}, [&](double lam, double w) {
        rep.atoms.push_back({lam, w / (1.0 + lam), false});
    });
    quad_panel({std::log(1e-4), std::log(4.0), 200}, [&](double u, double w) {
        double lam = std::exp(u);
        rep.atoms.push_back({lam, w * lam / (1.0 + lam), false});
    });
    f.rep = std::move(rep);
    return f;
}

std::vector<OperatorFunction> function_catalog() {
    std::vector<OperatorFunction> cat;
    cat.push_back(make_power(0.3));
    cat.push_back(make_power(0.5));
    cat.push_back(make_power(0.75));
    cat.push_back(make_power(1.0));
    cat.push_back(make_power(1.5));
    cat.push_back(make_power(2.0));
    cat.push_back(make_identity());
    cat.push_back(make_square());
    cat.push_back(make_inverse());
    cat.push_back(make_neg_log());
    cat.push_back(make_x_log_x());
    cat.push_back(make_klein());
    cat.push_back(make_log_mean());
    cat.push_back(make_log_recip());
    return cat;
}

double rep_reproduction_error(const OperatorFunction& f) {
    if (!f.rep) return 0.0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double x = std::pow(10.0, -3.0 + 6.0 * i / 49.0);
        double want = f.rep_target(x);
        double got = f.rep->eval(x);
        worst = std::max(worst, std::abs(got - want) / (1.0 + std::abs(want)));
    }
    return worst;
}

Matrix eval_rep(const IntegralRep& rep, const PsdMatrix& x) {
    double top = x.eigenvalues()[x.dim() - 1];
    if (x.eigenvalues()[0] <= tol::eig_floor_rel * std::max(top, 1e-300))
        throw DomainError("eval_rep: positive definite input required");
    return matrix_function(x.mat(), [&rep](double v) { return rep.eval(v); },
                           FunctionDomain::positive_only);
}

Matrix perspective(const OperatorFunction& f, const PsdMatrix& x,
                   const PsdMatrix& y) {
    if (x.dim() != y.dim()) throw ShapeError("perspective: dim mismatch");
    double top = y.eigenvalues()[y.dim() - 1];
    if (y.eigenvalues()[0] <= tol::eig_floor_rel * std::max(top, 1e-300))
        throw DomainError("perspective: second argument must be "
                          "positive definite");
    Matrix s = sqrt_psd(y);
    Matrix si = power_psd(y, -0.5);
    Matrix m = hermitize(si * x.mat() * si);
    Matrix fm = matrix_function(m, f.eval, f.domain);
    return hermitize(s * fm * s);
}

double scalar_perspective_rep_check(const OperatorFunction& f) {
    if (!f.rep) return 0.0;
    const IntegralRep& rep = *f.rep;
    double worst = 0.0;
    for (int ix = 0; ix < 13; ++ix) {
        double x = std::pow(10.0, -2.0 + 4.0 * ix / 12.0);
        for (int iy = 0; iy < 7; ++iy) {
            double y = std::pow(10.0, -1.0 + 2.0 * iy / 6.0);
            double acc = 0.0;
            switch (rep.kind) {
            case RepKind::lowner:
                acc = rep.beta * y + rep.gamma * x;
                for (const auto& a : rep.atoms)
                    acc += a.at_infinity ? a.weight * x
                                         : a.weight * (1.0 + a.lambda) * x *
                                               y / (a.lambda * y + x);
                break;
            case RepKind::hansen:
                acc = rep.beta * y;
                for (const auto& a : rep.atoms)
                    acc += a.at_infinity ? a.weight * y
                                         : a.weight * (a.lambda + 1.0) * y *
                                               y / (a.lambda * y + x);
                break;
            case RepKind::convex:
                acc = rep.alpha * y + rep.beta * x + rep.gamma * x * x / y;
                for (const auto& a : rep.atoms)
                    acc += a.at_infinity ? a.weight * x * x / y
                                         : a.weight * (1.0 + a.lambda) * x *
                                               x / (a.lambda * y + x);
                break;
            }
            double want = y * f.rep_target(x / y);
            worst = std::max(worst,
                             std::abs(acc - want) / (1.0 + std::abs(want)));
        }
    }
    return worst;
}

double numeric_monotone_test(const OperatorFunction& f, Rng& rng,
                             int samples) {
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const int n = 3;
        Matrix a = sample_spectral_pd(n, rng);
        Matrix b = a + 0.4 * random_psd(n, n, rng);
        Matrix fa = matrix_function(a, f.eval, f.domain);
        Matrix fb = matrix_function(b, f.eval, f.domain);
        Matrix d = f.monotone_decreasing ? Matrix(fa - fb) : Matrix(fb - fa);
        worst = std::min(worst, min_eig(hermitize(d)));
    }
    return worst;
}

} // namespace traceforge
