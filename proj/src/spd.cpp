#include "cnbe/spd.hpp"

#include <sstream>
#include <vector>

namespace cnbe {

SpdFactor cholesky_spd(const Eigen::MatrixXd& m, const JitterPolicy& policy) {
    if (m.rows() != m.cols()) throw std::invalid_argument("cholesky_spd: matrix not square");
    double jitter = 0.0;
    Eigen::MatrixXd work = m;
    for (;;) {
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            return SpdFactor{llt.matrixL(), jitter};
        }
        if (jitter >= policy.cap) {
            std::ostringstream msg;
            msg << "cholesky_spd: factorization failed at jitter cap (final jitter " << jitter
                << ")";
            throw not_positive_definite_error(msg.str(), jitter);
        }
        const double next = jitter == 0.0 ? policy.start : jitter * policy.factor;
        jitter = next > policy.cap ? policy.cap : next;
        work = m + jitter * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    }
}

Eigen::VectorXd gp_sample(const SpdFactor& factor, Rng& rng) {
    Eigen::VectorXd z(factor.dim());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    return factor.lower.triangularView<Eigen::Lower>() * z;
}

Eigen::MatrixXd increment_covariance(const CovarianceModel& variogram, const Eigen::MatrixXd& dist,
                                     int anchor, const std::vector<int>& sites) {
    const int n = static_cast<int>(sites.size());
    Eigen::VectorXd to_anchor(n);
    for (int i = 0; i < n; ++i) to_anchor(i) = kernel_eval(variogram, dist(sites[i], anchor));
    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = i; k < n; ++k) {
            const double v =
                to_anchor(i) + to_anchor(k) - kernel_eval(variogram, dist(sites[i], sites[k]));
            cov(i, k) = v;
            cov(k, i) = v;
        }
    }
    return cov;
}

Eigen::VectorXd conditional_gp_increment(const CovarianceModel& variogram, int anchor,
                                         const Grid& grid, Rng& rng) {
    if (variogram.kind != KernelKind::power_variogram)
        throw std::invalid_argument("conditional_gp_increment: variogram kernel required");
    const int d = grid.d();
    if (anchor < 0 || anchor >= d)
        throw std::invalid_argument("conditional_gp_increment: anchor out of range");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    if (d == 1) return out;
    std::vector<int> rest;
    rest.reserve(d - 1);
    for (int i = 0; i < d; ++i)
        if (i != anchor) rest.push_back(i);
    const Eigen::MatrixXd dist = pairwise_distances(grid);
    const SpdFactor factor = cholesky_spd(increment_covariance(variogram, dist, anchor, rest));
    const Eigen::VectorXd draw = gp_sample(factor, rng);
    for (int i = 0; i < d - 1; ++i) out(rest[i]) = draw(i);
    return out;
}

IncrementSampler::IncrementSampler(const CovarianceModel& variogram, const Eigen::MatrixXd& dist)
    : d_(static_cast<int>(dist.rows())) {
    if (variogram.kind != KernelKind::power_variogram)
        throw std::invalid_argument("IncrementSampler: variogram kernel required");
    if (d_ < 2) {
        factor_ = SpdFactor{Eigen::MatrixXd::Zero(0, 0), 0.0};
        return;
    }
    std::vector<int> rest;
    rest.reserve(d_ - 1);
    for (int i = 1; i < d_; ++i) rest.push_back(i);
    factor_ = cholesky_spd(increment_covariance(variogram, dist, 0, rest));
}

Eigen::VectorXd IncrementSampler::draw(Rng& rng) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d_);
    if (d_ < 2) return out;
    out.tail(d_ - 1) = gp_sample(factor_, rng);
    return out;
}

Eigen::VectorXd IncrementSampler::draw_anchored(int anchor, Rng& rng) const {
    Eigen::VectorXd eta = draw(rng);
    if (anchor == 0) return eta;
    const double at_anchor = eta(anchor);
    eta.array() -= at_anchor;
    eta(anchor) = 0.0;  // exact zero at the anchor
    return eta;
}

}  // namespace cnbe
