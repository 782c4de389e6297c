#include "igeo/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace igeo {

const char* frame_name(Frame f) {
    switch (f) {
        case Frame::original: return "original";
        case Frame::tilde: return "tilde";
        case Frame::primed: return "primed";
    }
    return "?";
}

void ModelParams::validate() const {
    const auto n = r.size();
    if (n < 1) throw std::invalid_argument("ModelParams: need at least one pair");
    if (lambda.size() != n || xi.size() != n)
        throw std::invalid_argument("ModelParams: r, lambda, xi must have equal length");
    for (Eigen::Index k = 0; k < n; ++k) {
        if (!(r[k] > 0.0 && r[k] < 1.0))
            throw std::invalid_argument("ModelParams: r out of (0,1)");
        if (!(lambda[k] > 0.0)) throw std::invalid_argument("ModelParams: lambda must be > 0");
        if (!(xi[k] > 0.0)) throw std::invalid_argument("ModelParams: xi must be > 0");
    }
}

ModelParams ModelParams::uniform(int l, double r, double lambda, double xi) {
    ModelParams p;
    p.r = Eigen::VectorXd::Constant(l, r);
    p.lambda = Eigen::VectorXd::Constant(l, lambda);
    p.xi = Eigen::VectorXd::Constant(l, xi);
    return p;
}

namespace manifold {

std::vector<Diag> diagonalize_all(const ModelParams& params) {
    std::vector<Diag> out;
    out.reserve(params.l());
    for (int k = 0; k < params.l(); ++k) out.push_back(diagonalize(params.r[k]));
    return out;
}

namespace {

void check_block_args(double r, double sigma, bool allow_zero_r) {
    if (!(sigma > 0.0)) throw std::invalid_argument("metric_block: sigma must be > 0");
    const bool r_ok = allow_zero_r ? (r >= 0.0 && r < 1.0) : (r > 0.0 && r < 1.0);
    if (!r_ok) throw std::invalid_argument("metric_block: r out of (0,1)");
}

double sigma_of(const Point& p, int k) { return p.coords[2 * k + 1]; }

}  // namespace

Eigen::Matrix2d metric_block(double r, double sigma, bool allow_zero_r) {
    check_block_args(r, sigma, allow_zero_r);
    Eigen::Matrix2d m;
    const double s2 = sigma * sigma;
    m << 1.0 / s2, r / s2, r / s2, 2.0 / s2;
    return m;
}

Eigen::Matrix2d metric_block_inverse(double r, double sigma, bool allow_zero_r) {
    check_block_args(r, sigma, allow_zero_r);
    Eigen::Matrix2d m;
    const double f = sigma * sigma / (2.0 - r * r);
    m << 2.0 * f, -r * f, -r * f, f;
    return m;
}

double volume_metric_determinant(const ModelParams& params, const Point& point) {
    if (point.frame != Frame::original)
        throw std::invalid_argument("volume_metric_determinant: point must be in the original frame");
    double g = 1.0;
    for (int k = 0; k < params.l(); ++k) {
        const double s = sigma_of(point, k);
        if (!(s > 0.0)) throw std::invalid_argument("volume_metric_determinant: sigma must be > 0");
        g *= (2.0 - params.r[k] * params.r[k]) / (s * s);
    }
    return g;
}

double block_metric_determinant(const ModelParams& params, const Point& point) {
    if (point.frame != Frame::original)
        throw std::invalid_argument("block_metric_determinant: point must be in the original frame");
    double g = 1.0;
    for (int k = 0; k < params.l(); ++k) {
        const double s = sigma_of(point, k);
        if (!(s > 0.0)) throw std::invalid_argument("block_metric_determinant: sigma must be > 0");
        g *= metric_block(params.r[k], s, true).determinant();
    }
    return g;
}

double scalar_curvature(const Eigen::VectorXd& r) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < r.size(); ++k) {
        if (!(r[k] >= 0.0 && r[k] < 1.0))
            throw std::invalid_argument("scalar_curvature: r out of [0,1)");
        sum += 1.0 / (2.0 - r[k] * r[k]);
    }
    return -2.0 * sum;
}

ChristoffelSymbols christoffels_asymptotic(double r, double sigma_tilde) {
    if (!(sigma_tilde > 0.0))
        throw std::invalid_argument("christoffels_asymptotic: sigma must be > 0");
    const auto d = diagonalize(r);
    return {-1.0 / sigma_tilde, (d.alpha_minus / d.alpha_plus) / sigma_tilde, -1.0 / sigma_tilde};
}

double riemann_1212_covariant(double r, double sigma_tilde) {
    if (!(sigma_tilde > 0.0))
        throw std::invalid_argument("riemann_1212_covariant: sigma must be > 0");
    const auto d = diagonalize(r);
    const double s2 = sigma_tilde * sigma_tilde;
    return -(d.alpha_minus / (d.a1 * d.a1)) / (s2 * s2);
}

double riemann_1212_reference(double r, double sigma_tilde) {
    if (!(sigma_tilde > 0.0))
        throw std::invalid_argument("riemann_1212_reference: sigma must be > 0");
    const auto d = diagonalize(r);
    return -(d.alpha_minus / (d.a1 * d.a1)) / (sigma_tilde * sigma_tilde);
}

namespace {

// Per-pair maps between frames. tilde -> original is (mu, sigma) = E (mu~, sigma~);
// primed -> tilde rescales mu by sqrt(alpha_+/2 alpha_-).
Eigen::Vector2d pair_to_tilde(const Eigen::Vector2d& v, Frame from, const Diag& d) {
    switch (from) {
        case Frame::tilde: return v;
        case Frame::original: return d.E_inv * v;
        case Frame::primed: return {d.primed_scale() * v[0], v[1]};
    }
    throw std::logic_error("unreachable");
}

Eigen::Vector2d pair_from_tilde(const Eigen::Vector2d& v, Frame to, const Diag& d) {
    switch (to) {
        case Frame::tilde: return v;
        case Frame::original: return d.E * v;
        case Frame::primed: return {v[0] / d.primed_scale(), v[1]};
    }
    throw std::logic_error("unreachable");
}

void check_frame_invariant(const Eigen::Vector2d& v, Frame frame, const Diag& d) {
    switch (frame) {
        case Frame::original:
        case Frame::primed:
            if (!(v[1] > 0.0)) throw std::domain_error("frame_transform: sigma must stay > 0");
            break;
        case Frame::tilde:
            if (!(d.a0 * v[0] + d.a1 * v[1] > 0.0))
                throw std::domain_error("frame_transform: a0*mu~ + a1*sigma~ must stay > 0");
            break;
    }
}

}  // namespace

Point frame_transform(const Point& point, Frame target, const ModelParams& params) {
    if (point.coords.size() != 2 * params.l())
        throw std::invalid_argument("frame_transform: coordinate size mismatch");
    Point out;
    out.frame = target;
    out.coords.resize(point.coords.size());
    for (int k = 0; k < params.l(); ++k) {
        const Diag d = diagonalize(params.r[k]);
        const Eigen::Vector2d v = point.coords.segment<2>(2 * k);
        const Eigen::Vector2d w = pair_from_tilde(pair_to_tilde(v, point.frame, d), target, d);
        check_frame_invariant(w, target, d);
        out.coords.segment<2>(2 * k) = w;
    }
    return out;
}

CurvatureBundle curvature_bundle(const ModelParams& params, const Eigen::VectorXd& sigma_tilde) {
    if (sigma_tilde.size() != params.l())
        throw std::invalid_argument("curvature_bundle: need one sigma per pair");
    CurvatureBundle b;
    for (int k = 0; k < params.l(); ++k) {
        b.christoffels.push_back(christoffels_asymptotic(params.r[k], sigma_tilde[k]));
        b.riemann_1212.push_back(riemann_1212_covariant(params.r[k], sigma_tilde[k]));
        b.riemann_1212_reference.push_back(manifold::riemann_1212_reference(params.r[k], sigma_tilde[k]));
    }
    b.scalar = scalar_curvature(params.r);
    return b;
}

}  // namespace manifold
}  // namespace igeo
