#include <gtest/gtest.h>

#include <cstring>

#include "siegel/kernels.hpp"
#include "siegel/metrics.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {

// Batch sizes around the vector width exercise the remainder loop.
class KernelSizes : public ::testing::TestWithParam<std::size_t> {};

void fill(Rng& rng, std::size_t n, SiegelBatch2& p, SiegelBatch2& q) {
    for (std::size_t i = 0; i < n; ++i) {
        p.push_back(random_siegel_point(rng, 2));
        q.push_back(i % 5 == 0 ? SiegelPoint(Complex(p.zr[i], p.zi[i]), CVector{Complex(p.wr[i], p.wi[i])})
                               : random_siegel_point(rng, 2));
    }
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_P(KernelSizes, ScalarMatchesPointwiseDistance) {
    Rng rng(GetParam());
    SiegelBatch2 p, q;
    fill(rng, GetParam(), p, q);
    std::vector<double> d(p.size()), t(p.size());
    dist_siegel_batch(p, q, d.data(), KernelPath::scalar);
    defect_batch(p, t.data(), KernelPath::scalar);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const SiegelPoint a(Complex(p.zr[i], p.zi[i]), CVector{Complex(p.wr[i], p.wi[i])});
        const SiegelPoint b(Complex(q.zr[i], q.zi[i]), CVector{Complex(q.wr[i], q.wi[i])});
        EXPECT_EQ(d[i], dist_siegel(a, b));
        EXPECT_EQ(t[i], a.defect());
    }
}

TEST_P(KernelSizes, Avx2IsBitwiseEqualToScalar) {
    if (!avx2_available()) GTEST_SKIP() << "no AVX2 on this CPU";
    Rng rng(1000 + GetParam());
    SiegelBatch2 p, q;
    fill(rng, GetParam(), p, q);
    std::vector<double> ds(p.size()), dv(p.size()), ts(p.size()), tv(p.size());
    dist_siegel_batch(p, q, ds.data(), KernelPath::scalar);
    dist_siegel_batch(p, q, dv.data(), KernelPath::avx2);
    defect_batch(p, ts.data(), KernelPath::scalar);
    defect_batch(p, tv.data(), KernelPath::avx2);
    EXPECT_TRUE(same_bits(ds, dv));
    EXPECT_TRUE(same_bits(ts, tv));
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelSizes, ::testing::Values(0, 1, 3, 4, 5, 8, 17, 1000));

TEST(Kernels, DispatchReportsPath) {
    const KernelPath p = detected_kernel_path();
    EXPECT_EQ(p == KernelPath::avx2, avx2_available());
    EXPECT_FALSE(to_string(p).empty());
}

TEST(Kernels, MismatchedBatchesThrow) {
    SiegelBatch2 p, q;
    p.push_back(SiegelPoint(1.0, CVector{0.0}));
    double out[1];
    EXPECT_ANY_THROW(dist_siegel_batch(p, q, out));
}
