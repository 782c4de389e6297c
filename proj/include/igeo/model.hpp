#pragma once

#include <Eigen/Dense>

namespace igeo {

/// The three coordinate frames of the embedded Gaussian model:
///   original (mu, sigma), tilde (diagonalized), primed (rescaled tilde).
enum class Frame { original, tilde, primed };

const char* frame_name(Frame f);

/// Model parameters: l freedom pairs with correlation coefficients r_k in
/// (0,1), rates lambda_k > 0 and integration constants xi_k > 0.
struct ModelParams {
    Eigen::VectorXd r;
    Eigen::VectorXd lambda;
    Eigen::VectorXd xi;

    int l() const { return static_cast<int>(r.size()); }
    void validate() const;  // throws std::invalid_argument

    static ModelParams uniform(int l, double r, double lambda, double xi);
};

/// A macrostate in a tagged frame, coordinates ordered
/// (mu_1, sigma_1, ..., mu_l, sigma_l) in that frame's variables.
struct Point {
    Frame frame = Frame::original;
    Eigen::VectorXd coords;
};

inline constexpr double kSigmaFloor = 1e-12;

}  // namespace igeo
