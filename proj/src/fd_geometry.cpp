#include "igeo/fd_geometry.hpp"

namespace igeo::fdgeom {

namespace {

std::vector<Eigen::MatrixXd> metric_gradient(const MetricFn& g, const Eigen::VectorXd& x,
                                             double h) {
    const auto n = x.size();
    std::vector<Eigen::MatrixXd> dg(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        Eigen::VectorXd xp = x, xm = x;
        xp[m] += h;
        xm[m] -= h;
        dg[m] = (g(xp) - g(xm)) / (2.0 * h);
    }
    return dg;
}

}  // namespace

std::vector<Eigen::MatrixXd> christoffels_fd(const MetricFn& g, const Eigen::VectorXd& x,
                                             double h) {
    const auto n = x.size();
    const Eigen::MatrixXd gi = g(x).inverse();
    const auto dg = metric_gradient(g, x, h);
    std::vector<Eigen::MatrixXd> gam(n, Eigen::MatrixXd::Zero(n, n));
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                double s = 0.0;
                for (Eigen::Index m = 0; m < n; ++m)
                    s += gi(a, m) * (dg[i](m, j) + dg[j](i, m) - dg[m](i, j));
                gam[a](i, j) = 0.5 * s;
            }
    return gam;
}

std::vector<double> riemann_covariant_fd(const MetricFn& g, const Eigen::VectorXd& x, double h) {
    const auto n = x.size();
    const Eigen::MatrixXd g0 = g(x);

    // Second differences of the metric.
    std::vector<std::vector<Eigen::MatrixXd>> d2(n, std::vector<Eigen::MatrixXd>(n));
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            if (a == b) {
                Eigen::VectorXd xp = x, xm = x;
                xp[a] += h;
                xm[a] -= h;
                d2[a][b] = (g(xp) - 2.0 * g0 + g(xm)) / (h * h);
            } else {
                Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
                xpp[a] += h;
                xpp[b] += h;
                xpm[a] += h;
                xpm[b] -= h;
                xmp[a] -= h;
                xmp[b] += h;
                xmm[a] -= h;
                xmm[b] -= h;
                d2[a][b] = (g(xpp) - g(xpm) - g(xmp) + g(xmm)) / (4.0 * h * h);
            }
        }

    const auto gam = christoffels_fd(g, x, h / 10.0);
    std::vector<double> R(static_cast<std::size_t>(n * n * n * n), 0.0);
    auto idx = [n](Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) {
        return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
    };
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l) {
                    double t = 0.5 * (d2[i][l](j, k) + d2[j][k](i, l) - d2[i][k](j, l) -
                                      d2[j][l](i, k));
                    for (Eigen::Index p = 0; p < n; ++p)
                        for (Eigen::Index q = 0; q < n; ++q)
                            t += g0(p, q) *
                                 (gam[p](j, k) * gam[q](i, l) - gam[p](j, l) * gam[q](i, k));
                    R[idx(i, j, k, l)] = t;
                }
    return R;
}

double ricci_scalar_fd(const MetricFn& g, const Eigen::VectorXd& x, double h) {
    const auto n = x.size();
    const Eigen::MatrixXd gi = g(x).inverse();
    const auto R = riemann_covariant_fd(g, x, h);
    auto idx = [n](Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) {
        return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
    };
    double scalar = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index l = 0; l < n; ++l)
                    scalar += gi(i, k) * gi(j, l) * R[idx(i, j, k, l)];
    return scalar;
}

Eigen::VectorXd geodesic_acceleration_fd(const MetricFn& g, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& v, double h) {
    const auto gam = christoffels_fd(g, x, h);
    const auto n = x.size();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    for (Eigen::Index a = 0; a < n; ++a) acc[a] = -v.dot(gam[a] * v);
    return acc;
}

}  // namespace igeo::fdgeom
