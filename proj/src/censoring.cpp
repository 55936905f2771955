#include "cnbe/censoring.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "cnbe/common.hpp"

namespace cnbe {

const char* cstar_policy_name(CstarPolicy policy) {
    switch (policy) {
        case CstarPolicy::zero: return "zero";
        case CstarPolicy::plus_quantile: return "plus_quantile";
        case CstarPolicy::minus_quantile: return "minus_quantile";
    }
    return "?";
}

CstarPolicy cstar_policy_from_name(const std::string& name) {
    if (name == "zero") return CstarPolicy::zero;
    if (name == "plus_quantile") return CstarPolicy::plus_quantile;
    if (name == "minus_quantile") return CstarPolicy::minus_quantile;
    throw std::invalid_argument("unknown c* policy: " + name);
}

void CensoringScheme::validate() const {
    if (!(tau >= 0.0 && tau < 1.0))
        throw std::invalid_argument("CensoringScheme: tau must lie in [0, 1)");
    if (!std::isfinite(cstar())) throw std::invalid_argument("CensoringScheme: c* not finite");
}

double CensoringScheme::cstar() const {
    switch (cstar_policy) {
        case CstarPolicy::zero: return 0.0;
        case CstarPolicy::plus_quantile: return margin_quantile(fstar, tau);
        case CstarPolicy::minus_quantile: return -margin_quantile(fstar, tau);
    }
    return 0.0;
}

double censoring_threshold(const CensoringScheme& scheme) {
    scheme.validate();
    return margin_quantile(scheme.fstar, scheme.tau);
}

CensoringScheme default_scheme(ProcessFamily family, double tau) {
    switch (family) {
        case ProcessFamily::gp:
        case ProcessFamily::imsp_brown_resnick:
            return {tau, MarginTag::exponential, CstarPolicy::zero};
        case ProcessFamily::msp_brown_resnick:
            return {tau, MarginTag::unit_frechet, CstarPolicy::zero};
        case ProcessFamily::r_pareto_max:
            return {tau, MarginTag::unit_pareto, CstarPolicy::plus_quantile};
        case ProcessFamily::hw_mixture:
            return {tau, MarginTag::unit_pareto, CstarPolicy::zero};
    }
    return {tau, MarginTag::exponential, CstarPolicy::zero};
}

CensoredTensor censor_encode(const ReplicateSet& set, const CensoringScheme& scheme) {
    scheme.validate();
    if (set.margin_tag != scheme.fstar)
        throw invalid_data_error(
            "censor_encode: set margins do not match the scheme's F*; apply "
            "marginal_transform first");
    CensoredTensor tensor;
    tensor.g = set.spec.grid.g;
    tensor.m = set.m;
    tensor.tau = scheme.tau;
    tensor.scheme = scheme;
    const double threshold = censoring_threshold(scheme);
    const double cstar = scheme.cstar();
    tensor.values.resize(set.data.rows(), set.data.cols());
    tensor.indicator.resize(set.data.rows(), set.data.cols());
    for (Eigen::Index t = 0; t < set.data.rows(); ++t) {
        for (Eigen::Index j = 0; j < set.data.cols(); ++j) {
            const double z = set.data(t, j);
            if (z <= threshold) {
                tensor.values(t, j) = cstar;
                tensor.indicator(t, j) = 0.0;
            } else {
                tensor.values(t, j) = z;
                tensor.indicator(t, j) = 1.0;
            }
        }
    }
    return tensor;
}

CensoringStats censoring_stats(const CensoredTensor& tensor) {
    CensoringStats stats;
    stats.uncensored_per_replicate.resize(tensor.m, 0);
    long total = 0;
    for (int t = 0; t < tensor.m; ++t) {
        int count = 0;
        for (Eigen::Index j = 0; j < tensor.indicator.cols(); ++j)
            if (tensor.indicator(t, j) == 1.0) ++count;
        stats.uncensored_per_replicate[t] = count;
        total += count;
    }
    const long cells = static_cast<long>(tensor.m) * tensor.indicator.cols();
    stats.uncensored_fraction = cells == 0 ? 0.0 : static_cast<double>(total) / cells;
    return stats;
}

namespace {

constexpr char kMagic[8] = {'C', 'N', 'B', 'E', 'C', 'T', 'E', 'N'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

void put_channel(std::ostream& os, const Eigen::MatrixXd& ch) {
    for (Eigen::Index t = 0; t < ch.rows(); ++t)
        for (Eigen::Index j = 0; j < ch.cols(); ++j) {
            const float f = static_cast<float>(ch(t, j));
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            unsigned char b[4];
            for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
            os.write(reinterpret_cast<const char*>(b), 4);
        }
}

void get_channel(std::istream& is, Eigen::MatrixXd& ch) {
    for (Eigen::Index t = 0; t < ch.rows(); ++t)
        for (Eigen::Index j = 0; j < ch.cols(); ++j) {
            unsigned char b[4];
            is.read(reinterpret_cast<char*>(b), 4);
            std::uint32_t u = 0;
            for (int i = 0; i < 4; ++i) u |= static_cast<std::uint32_t>(b[i]) << (8 * i);
            float f;
            std::memcpy(&f, &u, 4);
            ch(t, j) = static_cast<double>(f);
        }
}

}  // namespace

void save_tensor(const CensoredTensor& tensor, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_data_error("save_tensor: cannot open " + path);
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u32(os, 0);
    put_u32(os, static_cast<std::uint32_t>(tensor.m));
    put_u32(os, static_cast<std::uint32_t>(tensor.d()));
    put_u32(os, static_cast<std::uint32_t>(tensor.g));
    put_u32(os, static_cast<std::uint32_t>(tensor.scheme.fstar));
    put_u32(os, static_cast<std::uint32_t>(tensor.scheme.cstar_policy));
    put_f64(os, tensor.scheme.cstar());
    put_f64(os, censoring_threshold(tensor.scheme));
    put_channel(os, tensor.values);
    put_channel(os, tensor.indicator);
    put_f64(os, tensor.tau);
    if (!os) throw invalid_data_error("save_tensor: write failed for " + path);
}

CensoredTensor load_tensor(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw invalid_data_error("load_tensor: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw invalid_data_error("load_tensor: bad magic in " + path);
    if (get_u32(is) != kVersion) throw invalid_data_error("load_tensor: unsupported version");
    get_u32(is);  // reserved
    CensoredTensor tensor;
    tensor.m = static_cast<int>(get_u32(is));
    const int d = static_cast<int>(get_u32(is));
    tensor.g = static_cast<int>(get_u32(is));
    tensor.scheme.fstar = static_cast<MarginTag>(get_u32(is));
    tensor.scheme.cstar_policy = static_cast<CstarPolicy>(get_u32(is));
    get_f64(is);  // c* (reconstructable)
    get_f64(is);  // threshold (reconstructable)
    if (tensor.g * tensor.g != d) throw invalid_data_error("load_tensor: inconsistent header");
    tensor.values.resize(tensor.m, d);
    tensor.indicator.resize(tensor.m, d);
    get_channel(is, tensor.values);
    get_channel(is, tensor.indicator);
    tensor.tau = get_f64(is);
    tensor.scheme.tau = tensor.tau;
    if (!is) throw invalid_data_error("load_tensor: truncated file " + path);
    return tensor;
}

}  // namespace cnbe
