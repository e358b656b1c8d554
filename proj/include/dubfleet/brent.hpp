#pragma once

#include <cmath>
#include <optional>

namespace dubfleet {

struct BrentResult {
    double x{0.0};
    double fx{0.0};
    int evals{0};
};

/// Bracketed scalar minimization by Brent's combination of golden-section
/// steps and successive parabolic interpolation. Converges to a local
/// minimizer within x_tolerance; absent when max_evals objective evaluations
/// were spent without meeting the tolerance.
template <typename F>
std::optional<BrentResult> brent_minimize(F&& objective, double lo, double hi,
                                          double x_tolerance, int max_evals) {
    if (!(lo < hi) || x_tolerance <= 0.0 || max_evals < 1) return std::nullopt;

    constexpr double golden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
    const double eps = std::sqrt(2.220446049250313e-16);

    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = objective(x);
    double fw = fx, fv = fx;
    int evals = 1;
    double d = 0.0, e = 0.0;

    while (true) {
        const double m = 0.5 * (a + b);
        const double tol = eps * std::abs(x) + x_tolerance;
        const double tol2 = 2.0 * tol;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
            return BrentResult{x, fx, evals};
        }
        if (evals >= max_evals) return std::nullopt;

        bool golden_step = true;
        if (std::abs(e) > tol) {
            // Trial parabola through x, v, w.
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = x < m ? tol : -tol;
                golden_step = false;
            }
        }
        if (golden_step) {
            e = (x < m ? b : a) - x;
            d = golden * e;
        }

        const double u = x + (std::abs(d) >= tol ? d : (d > 0.0 ? tol : -tol));
        const double fu = objective(u);
        ++evals;

        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
}

}  // namespace dubfleet
