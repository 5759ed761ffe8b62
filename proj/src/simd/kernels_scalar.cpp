// Scalar reference kernels. The AVX2 variants are tested against these.

#include <cmath>
#include <complex>

#include "gk15.hpp"
#include "trigsum/simd/kernels.hpp"

namespace trigsum::simd {
namespace {

using namespace detail;

void map_nodes(std::span<const double> centers, std::span<const double> half_widths,
               std::span<double> nodes) {
  const std::size_t panels = centers.size();
  for (std::size_t j = 0; j < kNodes; ++j) {
    double* row = nodes.data() + j * panels;
    for (std::size_t p = 0; p < panels; ++p) {
      const double offset = half_widths[p] * kXi[j];
      row[p] = centers[p] + offset;
    }
  }
}

void gk_reduce(std::span<const double> half_widths, std::span<const double> re,
               std::span<const double> im, GkOutput out) {
  const std::size_t panels = half_widths.size();
  for (std::size_t p = 0; p < panels; ++p) {
    double k_re = 0.0, k_im = 0.0, g_re = 0.0, g_im = 0.0, abs_sum = 0.0;
    for (std::size_t j = 0; j < kNodes; ++j) {
      const double fr = re[j * panels + p];
      const double fi = im[j * panels + p];
      const double wk_fr = kWk[j] * fr;
      const double wk_fi = kWk[j] * fi;
      k_re = k_re + wk_fr;
      k_im = k_im + wk_fi;
      const double wg_fr = kWg[j] * fr;
      const double wg_fi = kWg[j] * fi;
      g_re = g_re + wg_fr;
      g_im = g_im + wg_fi;
      const double mod = std::sqrt(fr * fr + fi * fi);
      const double wk_mod = kWk[j] * mod;
      abs_sum = abs_sum + wk_mod;
    }
    const double mean_re = 0.5 * k_re;
    const double mean_im = 0.5 * k_im;
    double asc_sum = 0.0;
    for (std::size_t j = 0; j < kNodes; ++j) {
      const double dr = re[j * panels + p] - mean_re;
      const double di = im[j * panels + p] - mean_im;
      const double mod = std::sqrt(dr * dr + di * di);
      const double wk_mod = kWk[j] * mod;
      asc_sum = asc_sum + wk_mod;
    }
    const double hw = half_widths[p];
    const double d_re = (k_re - g_re) * hw;
    const double d_im = (k_im - g_im) * hw;
    const double raw = std::sqrt(d_re * d_re + d_im * d_im);
    const double resabs = abs_sum * hw;
    const double resasc = asc_sum * hw;
    out.value_re[p] = k_re * hw;
    out.value_im[p] = k_im * hw;
    out.resabs[p] = resabs;
    out.error[p] = gk_error(raw, resabs, resasc);
  }
}

void modulate(std::span<const double> t, std::span<double> re, std::span<double> im, double x,
              double h) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = t[i] * x;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double k = h == 0.0 ? 1.0 : sinc(t[i] * h);
    const double fr = re[i];
    const double fi = im[i];
    re[i] = (fr * c - fi * s) * k;
    im[i] = (fr * s + fi * c) * k;
  }
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double sinc(double u) noexcept {
  if (std::fabs(u) <= kSincSeriesCutoff) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{Isa::scalar, &map_nodes, &gk_reduce, &modulate,
                                 &compensated_sum};
  return table;
}

}  // namespace trigsum::simd
