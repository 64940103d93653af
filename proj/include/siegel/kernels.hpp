#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "siegel/points.hpp"

namespace siegel {

/// Structure-of-arrays batch of points of H^2.
struct SiegelBatch2 {
    std::vector<double> zr, zi, wr, wi;

    std::size_t size() const { return zr.size(); }
    void push_back(const SiegelPoint& p);
};

enum class KernelPath { scalar, avx2 };
std::string to_string(KernelPath p);

/// AVX2 when the CPU reports it, scalar otherwise.
KernelPath detected_kernel_path();
bool avx2_available();

/// Batch defect Re z - |w|^2.
void defect_batch(const SiegelBatch2& p, double* out, KernelPath path);
void defect_batch(const SiegelBatch2& p, double* out);

/// Batch pseudo-hyperbolic distance, pairwise p[i] vs q[i]; same arithmetic
/// as dist_siegel, so the scalar and AVX2 paths agree bit for bit.
void dist_siegel_batch(const SiegelBatch2& p, const SiegelBatch2& q, double* out, KernelPath path);
void dist_siegel_batch(const SiegelBatch2& p, const SiegelBatch2& q, double* out);

} // namespace siegel
