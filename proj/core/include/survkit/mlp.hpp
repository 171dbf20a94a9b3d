#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <vector>

namespace survkit {

/// Fully-connected feature transform with ELU activations: every layer is
/// linear + ELU (+ inverted dropout in training mode). An empty layer
/// list is the identity transform (plain MTLR).
struct Mlp {
  std::vector<Eigen::MatrixXd> weights; // layer l: (out x in)
  std::vector<Eigen::VectorXd> biases;
  double dropout = 0.0;
  std::size_t in_dim = 0;

  std::size_t output_dim() const {
    return weights.empty() ? in_dim : static_cast<std::size_t>(weights.back().rows());
  }
  std::size_t n_layers() const { return weights.size(); }

  /// U(-1/sqrt(fan_in), 1/sqrt(fan_in)) init for weights and biases.
  static Mlp init(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                  double dropout, std::mt19937_64& rng);

  /// Cached activations from a forward pass, reused by backward().
  struct Forward {
    Eigen::MatrixXd input;             // batch x d
    std::vector<Eigen::MatrixXd> pre;  // pre-activation per layer
    std::vector<Eigen::MatrixXd> post; // after ELU and dropout per layer
    std::vector<Eigen::MatrixXd> mask; // dropout multipliers (empty in eval mode)

    const Eigen::MatrixXd& output() const { return post.empty() ? input : post.back(); }
  };

  /// Rows of `x` are patients. Training mode draws dropout masks from
  /// `rng`; evaluation mode (rng == nullptr) is deterministic.
  Forward forward(const Eigen::MatrixXd& x, std::mt19937_64* rng = nullptr) const;

  struct Gradient {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
  };

  /// Backpropagation of d loss / d output through the cached pass.
  Gradient backward(const Forward& fwd, const Eigen::MatrixXd& d_output) const;
};

} // namespace survkit
