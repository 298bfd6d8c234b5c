#include "crdme/quadrature.hpp"

#include <cmath>
#include <cstdio>

namespace crdme {

namespace {

constexpr int kMaxDepth = 40;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK values).
// Nodes at odd indices together with the center form the embedded G7 rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Rule15 {
    double node[15];
    double wk[15];
    double wg[15];  // zero on Kronrod-only nodes
};

Rule15 make_rule()
{
    Rule15 r{};
    for (int i = 0; i < 7; ++i) {
        r.node[i] = -kXgk[i];
        r.wk[i] = kWgk[i];
        r.node[14 - i] = kXgk[i];
        r.wk[14 - i] = kWgk[i];
        if (i % 2 == 1) {
            r.wg[i] = kWg[i / 2];
            r.wg[14 - i] = kWg[i / 2];
        }
    }
    r.node[7] = 0.0;
    r.wk[7] = kWgk[7];
    r.wg[7] = kWg[3];
    return r;
}

const Rule15& rule()
{
    static const Rule15 r = make_rule();
    return r;
}

// One panel: returns the Kronrod estimate and |K - G|.
void eval_panel(const Integrand2d& f, double cx, double cy, double hx, double hy,
                double* out_k, double* out_err)
{
    const Rule15& r = rule();
    double fval[15][15];
    double xs[15];
    for (int i = 0; i < 15; ++i)
        xs[i] = cx + hx * r.node[i];
    for (int j = 0; j < 15; ++j) {
        const double y = cy + hy * r.node[j];
        for (int i = 0; i < 15; ++i)
            fval[j][i] = f(xs[i], y);
    }
    double ik = 0.0, ig = 0.0;
    for (int j = 0; j < 15; ++j) {
        double rowk = 0.0, rowg = 0.0;
        for (int i = 0; i < 15; ++i) {
            rowk += r.wk[i] * fval[j][i];
            rowg += r.wg[i] * fval[j][i];
        }
        ik += r.wk[j] * rowk;
        ig += r.wg[j] * rowg;
    }
    *out_k = ik * hx * hy;
    *out_err = std::fabs(ik - ig) * hx * hy;
}

double integrate_recursive(const Integrand2d& f, double cx, double cy,
                           double hx, double hy, double tol, int depth)
{
    double ik, err;
    eval_panel(f, cx, cy, hx, hy, &ik, &err);
    if (err <= tol || err <= 1e-14 * std::fabs(ik))
        return ik;
    if (depth >= kMaxDepth) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "quadrature: panel error %.3e exceeds tolerance %.3e at depth %d",
                      err, tol, depth);
        throw quadrature_error(buf);
    }
    const double qx = 0.5 * hx, qy = 0.5 * hy, qt = 0.25 * tol;
    return integrate_recursive(f, cx - qx, cy - qy, qx, qy, qt, depth + 1) +
           integrate_recursive(f, cx + qx, cy - qy, qx, qy, qt, depth + 1) +
           integrate_recursive(f, cx - qx, cy + qy, qx, qy, qt, depth + 1) +
           integrate_recursive(f, cx + qx, cy + qy, qx, qy, qt, depth + 1);
}

}  // namespace

double integrate_rect(const Integrand2d& f, const AxisRect& rect, double tol)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("integrate_rect: tolerance must be positive");
    if (!(rect.lo.x < rect.hi.x) || !(rect.lo.y < rect.hi.y))
        return 0.0;
    return integrate_recursive(f, 0.5 * (rect.lo.x + rect.hi.x),
                               0.5 * (rect.lo.y + rect.hi.y),
                               0.5 * rect.width(), 0.5 * rect.height(), tol, 0);
}

double integrate_unit_square(const Integrand2d& f, double tol)
{
    return integrate_rect(f, AxisRect{{-0.5, -0.5}, {0.5, 0.5}}, tol);
}

}  // namespace crdme
