#pragma once

// Data-parallel inner loops of the quadrature engine.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The dispatcher picks one table at first use based on CPUID; tests
// can pin either table to compare them.
//
// Panel batches are stored node-major: entry j * P + p holds node j of panel p,
// so one vector load covers the same node of consecutive panels.

#include <cstddef>
#include <span>
#include <string_view>

namespace trigsum::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Number of Gauss-Kronrod nodes per panel (7-point Gauss embedded in 15-point Kronrod).
inline constexpr std::size_t kNodes = 15;

struct GkOutput {
  std::span<double> value_re;
  std::span<double> value_im;
  std::span<double> error;
  std::span<double> resabs;  // integral of |f| over the panel
};

struct KernelTable {
  Isa isa;

  /// nodes[j * P + p] = centers[p] + half_widths[p] * xi_j.
  void (*map_nodes)(std::span<const double> centers, std::span<const double> half_widths,
                    std::span<double> nodes);

  /// Kronrod value and QUADPACK-style error estimate for each of P panels.
  void (*gk_reduce)(std::span<const double> half_widths, std::span<const double> re,
                    std::span<const double> im, GkOutput out);

  /// In place: (re + i im) *= exp(i t x) * sinc(t h). h == 0 means no sinc factor.
  void (*modulate)(std::span<const double> t, std::span<double> re, std::span<double> im,
                   double x, double h);

  /// Neumaier-compensated sum with a fixed reduction order.
  double (*compensated_sum)(std::span<const double> values);
};

const KernelTable& scalar_table() noexcept;
#if defined(TRIGSUM_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

bool isa_supported(Isa isa) noexcept;

/// Table chosen at startup (best supported ISA).
const KernelTable& kernels() noexcept;

/// Override the dispatch. Returns false when the ISA is not available here.
bool force_isa(Isa isa) noexcept;

Isa active_isa() noexcept;

/// sin(u)/u with the value 1 at u = 0; a short series is used for |u| <= 1e-4.
double sinc(double u) noexcept;

}  // namespace trigsum::simd
