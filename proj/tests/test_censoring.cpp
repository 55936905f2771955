#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "cnbe/censoring.hpp"
#include "cnbe/common.hpp"
#include "cnbe/replicate_io.hpp"
#include "cnbe/rng.hpp"

using namespace cnbe;

namespace {

ReplicateSet tiny_set(MarginTag tag, std::initializer_list<double> values) {
    ReplicateSet set;
    set.spec.family = ProcessFamily::gp;
    set.spec.grid = build_grid(2, Extent{0, 1, 0, 1});
    set.margin_tag = tag;
    set.m = 1;
    set.data.resize(1, static_cast<int>(values.size()));
    int j = 0;
    for (double v : values) set.data(0, j++) = v;
    return set;
}

}  // namespace

TEST_CASE("censoring_threshold examples") {
    CHECK(censoring_threshold({0.9, MarginTag::exponential, CstarPolicy::zero}) ==
          doctest::Approx(2.302585092994046).epsilon(1e-12));
    CHECK(censoring_threshold({0.9, MarginTag::unit_pareto, CstarPolicy::zero}) ==
          doctest::Approx(10.0).epsilon(1e-12));
    CHECK(censoring_threshold({0.0, MarginTag::uniform, CstarPolicy::zero}) == 0.0);
    CHECK_THROWS_AS(censoring_threshold({1.0, MarginTag::uniform, CstarPolicy::zero}),
                    std::invalid_argument);
    CHECK_THROWS_AS(censoring_threshold({-0.1, MarginTag::uniform, CstarPolicy::zero}),
                    std::invalid_argument);
}

TEST_CASE("censor_encode basic fields and boundary convention") {
    // Pareto(1), tau = 0.9 (threshold 10), c* = 0.
    const ReplicateSet set = tiny_set(MarginTag::unit_pareto, {5.0, 20.0, 10.0, 30.0});
    const CensoringScheme scheme{0.9, MarginTag::unit_pareto, CstarPolicy::zero};
    const CensoredTensor tensor = censor_encode(set, scheme);
    CHECK(tensor.values(0, 0) == 0.0);
    CHECK(tensor.values(0, 1) == 20.0);
    CHECK(tensor.indicator(0, 0) == 0.0);
    CHECK(tensor.indicator(0, 1) == 1.0);
    // Values exactly at the threshold are censored.
    CHECK(tensor.indicator(0, 2) == 0.0);
    CHECK(tensor.values(0, 2) == 0.0);
    CHECK(tensor.indicator(0, 3) == 1.0);

    // tau = 0: nothing censored, values unchanged.
    const CensoredTensor open = censor_encode(set, {0.0, MarginTag::unit_pareto,
                                                    CstarPolicy::zero});
    CHECK(open.indicator.minCoeff() == 1.0);
    CHECK((open.values - set.data).cwiseAbs().maxCoeff() == 0.0);

    // Margin mismatch.
    CHECK_THROWS_AS(censor_encode(set, {0.9, MarginTag::exponential, CstarPolicy::zero}),
                    invalid_data_error);
}

TEST_CASE("censor_encode invariants on simulated data") {
    ProcessSpec spec;
    spec.family = ProcessFamily::gp;
    spec.lambda = 4.0;
    spec.kappa = 1.0;
    spec.grid = build_grid(4, Extent{0, 16, 0, 16});
    Rng rng(33);
    const ReplicateSet uniform = simulate_gp_uniform(spec, 4000, rng);
    const ReplicateSet expset = marginal_transform(uniform, MarginTag::exponential);
    const CensoringScheme scheme{0.9, MarginTag::exponential, CstarPolicy::zero};
    const double threshold = censoring_threshold(scheme);
    const CensoredTensor tensor = censor_encode(expset, scheme);

    std::multiset<double> kept, expected;
    for (int t = 0; t < tensor.m; ++t) {
        for (int j = 0; j < tensor.d(); ++j) {
            const double ind = tensor.indicator(t, j);
            CHECK((ind == 0.0 || ind == 1.0));
            if (ind == 0.0) {
                CHECK(tensor.values(t, j) == scheme.cstar());
            } else {
                CHECK(tensor.values(t, j) > threshold);
                kept.insert(tensor.values(t, j));
            }
            if (expset.data(t, j) > threshold) expected.insert(expset.data(t, j));
        }
    }
    // Exceedance preservation: uncensored multiset equals the original
    // exceedances.
    CHECK(kept == expected);

    // Mean indicator concentrates around 1 - tau.
    const CensoringStats stats = censoring_stats(tensor);
    CHECK(stats.uncensored_fraction > 0.095);
    CHECK(stats.uncensored_fraction < 0.105);

    // Idempotence: re-encoding the encoded value channel changes nothing.
    ReplicateSet reencode = expset;
    reencode.data = tensor.values;
    const CensoredTensor again = censor_encode(reencode, scheme);
    CHECK((again.values - tensor.values).cwiseAbs().maxCoeff() == 0.0);
    CHECK((again.indicator - tensor.indicator).cwiseAbs().maxCoeff() == 0.0);

    // Indicator is a pure function of data and tau.
    const CensoringScheme shifted{0.9, MarginTag::exponential, CstarPolicy::minus_quantile};
    const CensoredTensor other = censor_encode(expset, shifted);
    CHECK((other.indicator - tensor.indicator).cwiseAbs().maxCoeff() == 0.0);

    // c* = 0 sits at/below the lower endpoint for the finite-lower-bound margins.
    for (MarginTag tag :
         {MarginTag::exponential, MarginTag::unit_pareto, MarginTag::unit_frechet}) {
        const CensoringScheme s{0.9, tag, CstarPolicy::zero};
        CHECK(s.cstar() <= margin_support_lower(tag));
    }
}

TEST_CASE("censoring_stats corner cases") {
    const ReplicateSet set = tiny_set(MarginTag::unit_pareto, {5.0, 20.0});
    const CensoredTensor mixed =
        censor_encode(set, {0.9, MarginTag::unit_pareto, CstarPolicy::zero});
    CHECK(censoring_stats(mixed).uncensored_fraction == doctest::Approx(0.5));

    const CensoredTensor none = censor_encode(set, {0.0, MarginTag::unit_pareto,
                                                    CstarPolicy::zero});
    CHECK(censoring_stats(none).uncensored_fraction == 1.0);

    CensoredTensor all = mixed;
    all.indicator.setZero();
    CHECK(censoring_stats(all).uncensored_fraction == 0.0);
}

TEST_CASE("replicate and tensor serialization round trips") {
    ProcessSpec spec;
    spec.family = ProcessFamily::hw_mixture;
    spec.lambda = 6.5;
    spec.kappa = 1.7;
    spec.delta = 0.42;
    spec.aniso = AnisotropyParams{2.0, -0.7};
    spec.grid = build_grid(3, Extent{0, 8, 0, 8});
    Rng rng(55);
    ReplicateSet set = simulate_hw(spec, 17, rng);
    // Round to f32 so the round trip is exact by construction.
    for (int t = 0; t < set.m; ++t)
        for (int j = 0; j < 9; ++j) set.data(t, j) = static_cast<float>(set.data(t, j));

    const std::string path = "/tmp/cnbe_test_replicates.bin";
    save_replicates(set, path);
    const ReplicateSet loaded = load_replicates(path);
    CHECK(loaded.m == set.m);
    CHECK(loaded.margin_tag == set.margin_tag);
    CHECK(loaded.spec.family == set.spec.family);
    CHECK(loaded.spec.lambda == set.spec.lambda);
    CHECK(loaded.spec.kappa == set.spec.kappa);
    CHECK(loaded.spec.delta == set.spec.delta);
    REQUIRE(loaded.spec.aniso.has_value());
    CHECK(loaded.spec.aniso->stretch == 2.0);
    CHECK(loaded.spec.aniso->rotation == -0.7);
    CHECK(loaded.spec.grid.g == 3);
    CHECK((loaded.data - set.data).cwiseAbs().maxCoeff() == 0.0);

    const CensoringScheme scheme{0.9, MarginTag::unit_pareto, CstarPolicy::plus_quantile};
    const CensoredTensor tensor = censor_encode(set, scheme);
    const std::string tpath = "/tmp/cnbe_test_tensor.bin";
    save_tensor(tensor, tpath);
    const CensoredTensor tl = load_tensor(tpath);
    CHECK(tl.m == tensor.m);
    CHECK(tl.g == tensor.g);
    CHECK(tl.tau == tensor.tau);
    CHECK(tl.scheme.fstar == scheme.fstar);
    CHECK(tl.scheme.cstar_policy == scheme.cstar_policy);
    CHECK((tl.indicator - tensor.indicator).cwiseAbs().maxCoeff() == 0.0);
    // Values pass through f32.
    for (int t = 0; t < tensor.m; ++t)
        for (int j = 0; j < tensor.d(); ++j)
            CHECK(tl.values(t, j) == static_cast<float>(tensor.values(t, j)));

    // Corrupt header rejected.
    std::ofstream bad("/tmp/cnbe_test_bad.bin", std::ios::binary);
    bad << "NOTAMAGI";
    bad.close();
    CHECK_THROWS_AS(load_replicates("/tmp/cnbe_test_bad.bin"), invalid_data_error);
    std::remove(path.c_str());
    std::remove(tpath.c_str());
    std::remove("/tmp/cnbe_test_bad.bin");
}
