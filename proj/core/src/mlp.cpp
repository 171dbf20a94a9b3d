#include "survkit/mlp.hpp"

#include "survkit/error.hpp"

#include <cmath>

namespace survkit {

namespace {

double elu(double z) { return z > 0.0 ? z : std::expm1(z); }
double elu_grad(double z) { return z > 0.0 ? 1.0 : std::exp(z); }

} // namespace

Mlp Mlp::init(std::size_t input_dim, const std::vector<std::size_t>& hidden,
              double dropout, std::mt19937_64& rng) {
  if (input_dim == 0) throw ShapeMismatchError("MLP input dimension must be > 0");
  if (dropout < 0.0 || dropout >= 1.0)
    throw InvalidConfigError("dropout must lie in [0, 1)");
  Mlp mlp;
  mlp.in_dim = input_dim;
  mlp.dropout = dropout;
  std::size_t fan_in = input_dim;
  for (std::size_t width : hidden) {
    if (width == 0) throw InvalidConfigError("hidden layer width must be > 0");
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> u(-bound, bound);
    Eigen::MatrixXd w(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(fan_in));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = u(rng);
    Eigen::VectorXd b(static_cast<Eigen::Index>(width));
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = u(rng);
    mlp.weights.push_back(std::move(w));
    mlp.biases.push_back(std::move(b));
    fan_in = width;
  }
  return mlp;
}

Mlp::Forward Mlp::forward(const Eigen::MatrixXd& x, std::mt19937_64* rng) const {
  if (static_cast<std::size_t>(x.cols()) != in_dim)
    throw ShapeMismatchError("MLP input width mismatch");
  Forward fwd;
  fwd.input = x;
  const Eigen::MatrixXd* cur = &fwd.input;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Eigen::MatrixXd pre =
        (*cur * weights[l].transpose()).rowwise() + biases[l].transpose();
    Eigen::MatrixXd post = pre.unaryExpr([](double z) { return elu(z); });
    if (rng != nullptr && dropout > 0.0) {
      const double keep = 1.0 - dropout;
      Eigen::MatrixXd mask(post.rows(), post.cols());
      for (Eigen::Index i = 0; i < mask.rows(); ++i)
        for (Eigen::Index j = 0; j < mask.cols(); ++j)
          mask(i, j) = unit(*rng) < keep ? 1.0 / keep : 0.0;
      post.array() *= mask.array();
      fwd.mask.push_back(std::move(mask));
    }
    fwd.pre.push_back(std::move(pre));
    fwd.post.push_back(std::move(post));
    cur = &fwd.post.back();
  }
  return fwd;
}

Mlp::Gradient Mlp::backward(const Forward& fwd, const Eigen::MatrixXd& d_output) const {
  Gradient g;
  g.weights.resize(weights.size());
  g.biases.resize(weights.size());

  Eigen::MatrixXd delta = d_output; // d loss / d post[l]
  for (std::size_t li = weights.size(); li > 0; --li) {
    const std::size_t l = li - 1;
    if (!fwd.mask.empty()) delta.array() *= fwd.mask[l].array();
    delta.array() *= fwd.pre[l].unaryExpr([](double z) { return elu_grad(z); }).array();
    const Eigen::MatrixXd& below = (l == 0) ? fwd.input : fwd.post[l - 1];
    g.weights[l] = delta.transpose() * below;
    g.biases[l] = delta.colwise().sum().transpose();
    if (l > 0) delta = delta * weights[l];
  }
  return g;
}

} // namespace survkit
