#pragma once

#include <Eigen/Dense>

#include "cnbe/common.hpp"
#include "cnbe/grid.hpp"
#include "cnbe/kernels.hpp"
#include "cnbe/rng.hpp"

namespace cnbe {

struct JitterPolicy {
    double start = 1e-10;
    double factor = 10.0;
    double cap = 1e-4;
};

// Lower Cholesky factor of M + jitter*I, with the jitter actually used.
struct SpdFactor {
    Eigen::MatrixXd lower;
    double jitter = 0.0;

    [[nodiscard]] Eigen::Index dim() const { return lower.rows(); }
};

SpdFactor cholesky_spd(const Eigen::MatrixXd& m, const JitterPolicy& policy = {});

// L z for z iid standard normal; covariance L L' in distribution.
Eigen::VectorXd gp_sample(const SpdFactor& factor, Rng& rng);

// Covariance of the increment process pinned to zero at the anchor:
// C(s_i, s_k) = gamma(s_i, a) + gamma(s_k, a) - gamma(s_i, s_k), built over
// the given subset of site indices.
Eigen::MatrixXd increment_covariance(const CovarianceModel& variogram,
                                     const Eigen::MatrixXd& dist, int anchor,
                                     const std::vector<int>& sites);

// One draw of the intrinsically stationary Gaussian increment process with
// the given power variogram, pinned to 0 at site `anchor` (exactly).
Eigen::VectorXd conditional_gp_increment(const CovarianceModel& variogram, int anchor,
                                         const Grid& grid, Rng& rng);

// Caches the anchor-0 increment factor once and re-anchors draws at any
// site: eta_j(s) = eta_0(s) - eta_0(s_j) has the same law with eta_j(s_j)=0.
class IncrementSampler {
  public:
    IncrementSampler(const CovarianceModel& variogram, const Eigen::MatrixXd& dist);

    // Draw anchored at site 0 (entry 0 is exactly zero).
    Eigen::VectorXd draw(Rng& rng) const;

    // Draw re-anchored at `anchor`.
    Eigen::VectorXd draw_anchored(int anchor, Rng& rng) const;

    [[nodiscard]] int dim() const { return d_; }

  private:
    int d_;
    SpdFactor factor_;  // (d-1) x (d-1), sites 1..d-1
};

}  // namespace cnbe
