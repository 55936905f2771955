#include "cnbe/replicate_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "cnbe/common.hpp"

namespace cnbe {

namespace {

constexpr char kMagic[8] = {'C', 'N', 'B', 'E', 'R', 'E', 'P', 'L'};
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

void put_f32(std::ostream& os, float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

float get_f32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t u = 0;
    for (int i = 0; i < 4; ++i) u |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    float v;
    std::memcpy(&v, &u, 4);
    return v;
}

}  // namespace

void save_replicates(const ReplicateSet& set, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_data_error("save_replicates: cannot open " + path);
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u32(os, 0);
    put_u32(os, static_cast<std::uint32_t>(set.m));
    put_u32(os, static_cast<std::uint32_t>(set.spec.grid.d()));
    put_u32(os, static_cast<std::uint32_t>(set.spec.grid.g));
    put_u32(os, static_cast<std::uint32_t>(set.spec.family));
    put_u32(os, static_cast<std::uint32_t>(set.margin_tag));
    put_f64(os, set.spec.lambda);
    put_f64(os, set.spec.kappa);
    put_f64(os, set.spec.delta);
    put_f64(os, set.spec.aniso ? set.spec.aniso->stretch : 1.0);
    put_f64(os, set.spec.aniso ? set.spec.aniso->rotation : 0.0);
    put_f64(os, set.spec.aniso ? 1.0 : 0.0);
    put_f64(os, set.spec.grid.extent.x_min);
    put_f64(os, set.spec.grid.extent.x_max);
    put_f64(os, set.spec.grid.extent.y_min);
    put_f64(os, set.spec.grid.extent.y_max);
    for (int t = 0; t < set.m; ++t)
        for (int j = 0; j < set.spec.grid.d(); ++j)
            put_f32(os, static_cast<float>(set.data(t, j)));
    if (!os) throw invalid_data_error("save_replicates: write failed for " + path);
}

ReplicateSet load_replicates(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw invalid_data_error("load_replicates: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw invalid_data_error("load_replicates: bad magic in " + path);
    const std::uint32_t version = get_u32(is);
    if (version != kVersion) throw invalid_data_error("load_replicates: unsupported version");
    get_u32(is);  // reserved
    ReplicateSet set;
    set.m = static_cast<int>(get_u32(is));
    const int d = static_cast<int>(get_u32(is));
    const int g = static_cast<int>(get_u32(is));
    set.spec.family = static_cast<ProcessFamily>(get_u32(is));
    set.margin_tag = static_cast<MarginTag>(get_u32(is));
    set.spec.lambda = get_f64(is);
    set.spec.kappa = get_f64(is);
    set.spec.delta = get_f64(is);
    const double stretch = get_f64(is);
    const double rotation = get_f64(is);
    const bool has_aniso = get_f64(is) != 0.0;
    Extent extent;
    extent.x_min = get_f64(is);
    extent.x_max = get_f64(is);
    extent.y_min = get_f64(is);
    extent.y_max = get_f64(is);
    if (has_aniso) set.spec.aniso = AnisotropyParams{stretch, rotation};
    if (g * g != d) throw invalid_data_error("load_replicates: inconsistent grid header");
    set.spec.grid = build_grid(g, extent);
    set.data.resize(set.m, d);
    for (int t = 0; t < set.m; ++t)
        for (int j = 0; j < d; ++j) set.data(t, j) = static_cast<double>(get_f32(is));
    if (!is) throw invalid_data_error("load_replicates: truncated file " + path);
    return set;
}

void export_replicates_csv(const ReplicateSet& set, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw invalid_data_error("export_replicates_csv: cannot open " + path);
    const int d = static_cast<int>(set.data.cols());
    os << "replicate";
    for (int j = 0; j < d; ++j) os << ",site" << j;
    os << "\n";
    char buf[32];
    for (int t = 0; t < set.m; ++t) {
        os << t;
        for (int j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof buf, "%.9g", set.data(t, j));
            os << ',' << buf;
        }
        os << "\n";
    }
}

}  // namespace cnbe
