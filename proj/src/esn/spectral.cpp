#include <Eigen/Eigenvalues>
#include <cmath>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/esn/content_esn.hpp"

namespace esncache {

namespace {

constexpr Eigen::Index kDenseLimit = 512;

double power_norm_estimate(const Eigen::SparseMatrix<double>& m) {
  constexpr int kBurnIn = 100;
  constexpr int kSteps = 400;
  double best = 0.0;
  Rng rng(0x5eedULL);
  for (int start = 0; start < 3; ++start) {
    Eigen::VectorXd v(m.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
    v.normalize();
    double log_growth = 0.0;
    for (int k = 0; k < kBurnIn + kSteps; ++k) {
      Eigen::VectorXd w = m * v;
      const double norm = w.norm();
      if (norm == 0.0) break;
      if (k >= kBurnIn) log_growth += std::log(norm);
      v = w / norm;
    }
    best = std::max(best, std::exp(log_growth / kSteps));
  }
  return best;
}

}  // namespace

double spectral_radius(const Eigen::SparseMatrix<double>& m) {
  if (m.rows() != m.cols()) throw ConfigError("spectral radius of a non-square matrix");
  if (m.rows() == 0 || m.nonZeros() == 0) return 0.0;
  if (m.rows() > kDenseLimit) return power_norm_estimate(m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(m), false);
  if (solver.info() != Eigen::Success) return power_norm_estimate(m);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::SparseMatrix<double> random_sparse_reservoir(std::size_t n, double density,
                                                    double target_radius, std::uint64_t seed) {
  if (n == 0) throw ConfigError("reservoir size must be positive");
  if (!(density > 0.0 && density <= 1.0)) throw ConfigError("reservoir density must be in (0, 1]");
  if (!(target_radius > 0.0 && target_radius < 1.0))
    throw ConfigError("spectral radius must be in (0, 1)");
  Rng rng(seed);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(density * static_cast<double>(n * n)) + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.uniform() < density) entries.emplace_back(i, j, rng.uniform(-1.0, 1.0));
    }
  }
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  const double rho = spectral_radius(m);
  if (rho > 0.0) m *= target_radius / rho;
  m.makeCompressed();
  return m;
}

}  // namespace esncache
