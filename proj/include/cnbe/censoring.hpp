#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cnbe/process.hpp"

namespace cnbe {

enum class CstarPolicy : int { zero = 0, plus_quantile = 1, minus_quantile = 2 };

const char* cstar_policy_name(CstarPolicy policy);
CstarPolicy cstar_policy_from_name(const std::string& name);

// Censoring level tau, working margin F_* and the constant substituted for
// censored values.
struct CensoringScheme {
    double tau = 0.9;
    MarginTag fstar = MarginTag::exponential;
    CstarPolicy cstar_policy = CstarPolicy::zero;

    void validate() const;
    [[nodiscard]] double cstar() const;
};

// The marginal tau-quantile on the F_* scale: the common threshold c across
// sites after standardization.
double censoring_threshold(const CensoringScheme& scheme);

// Default {F_*, c_tau*} per process family (the best-performing pairs; the
// hw entry is the 16x16-domain choice).
CensoringScheme default_scheme(ProcessFamily family, double tau);

// Two-channel encoded image stack: the value channel with censored sites
// replaced by c_tau*, and the one-hot indicator of uncensored sites.
struct CensoredTensor {
    int g = 0;                 // grid side; d = g*g
    int m = 0;                 // replicates
    Eigen::MatrixXd values;    // m x d
    Eigen::MatrixXd indicator; // m x d, entries exactly 0 or 1
    double tau = 0.0;
    CensoringScheme scheme;

    [[nodiscard]] int d() const { return g * g; }
};

// Values <= F_*^{-1}(tau) are censored (set to c_tau*, indicator 0);
// values above keep their magnitude with indicator 1. The set's margins
// must already be on the scheme's F_* scale.
CensoredTensor censor_encode(const ReplicateSet& set, const CensoringScheme& scheme);

struct CensoringStats {
    std::vector<int> uncensored_per_replicate;
    double uncensored_fraction = 0.0;
};

CensoringStats censoring_stats(const CensoredTensor& tensor);

// Binary CensoredTensor format: mirrors the ReplicateSet layout with a
// second channel block and a trailing f64 tau:
//   magic "CNBECTEN", u32 version/reserved,
//   u32 x 5: m, d, G, fstar tag, cstar policy,
//   f64 x 2: cstar value, threshold,
//   f32 x m*d value channel, f32 x m*d indicator channel, f64 tau.
void save_tensor(const CensoredTensor& tensor, const std::string& path);
CensoredTensor load_tensor(const std::string& path);

}  // namespace cnbe
