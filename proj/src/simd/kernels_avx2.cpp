// AVX2 kernels. Compiled with -mavx2 -mfma -ffp-contract=off; only reached
// after the dispatcher has confirmed CPU support.
//
// map_nodes and gk_reduce perform exactly the scalar operation sequence, so
// their results are bit-identical to the reference. modulate uses a vector
// sin/cos (Cody-Waite reduction + minimax polynomials) that agrees with libm
// to a few ulp; compensated_sum reduces in four lanes.

#include <immintrin.h>

#include <array>
#include <cmath>

#include "gk15.hpp"
#include "trigsum/simd/kernels.hpp"

namespace trigsum::simd {
namespace {

using namespace detail;

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

struct SinCos {
  __m256d sin;
  __m256d cos;
};

// Valid for |x| <= 2^30; callers route larger or non-finite lanes to libm.
inline SinCos sincos_pd(__m256d x) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(0.6366197723675814)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.5707963267948966), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.123233995736766e-17), r);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(-1.4973849048591698e-33), r);

  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_set1_pd(1.58969099521155010221e-10);
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(-2.50507602534068634195e-08));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(2.75573137070700676789e-06));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(-1.98412698298579493134e-04));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(8.33333333332248946124e-03));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(-1.66666666666666324348e-01));
  const __m256d sin_r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(r, z), ps));

  __m256d pc = _mm256_set1_pd(-1.13596475577881948265e-11);
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(2.08757232129817482790e-09));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(-2.75573143513906633035e-07));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(2.48015872894767294178e-05));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(-1.38888888888741095749e-03));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(4.16666666666666019037e-02));
  const __m256d hz = _mm256_mul_pd(_mm256_set1_pd(0.5), z);
  const __m256d cos_r = _mm256_add_pd(_mm256_sub_pd(_mm256_set1_pd(1.0), hz),
                                      _mm256_mul_pd(_mm256_mul_pd(z, z), pc));

  // Quadrant from the low bits of n (1.5 * 2^52 shifts the integer into the mantissa).
  const __m256i q = _mm256_castpd_si256(_mm256_add_pd(n, _mm256_set1_pd(6755399441055744.0)));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256d neg_sin =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, two), two));
  const __m256d neg_cos = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), two));
  const __m256d sign = _mm256_set1_pd(-0.0);

  SinCos out;
  out.sin = _mm256_xor_pd(_mm256_blendv_pd(sin_r, cos_r, swap), _mm256_and_pd(neg_sin, sign));
  out.cos = _mm256_xor_pd(_mm256_blendv_pd(cos_r, sin_r, swap), _mm256_and_pd(neg_cos, sign));
  return out;
}

inline bool needs_libm(__m256d x) {
  const __m256d big = _mm256_cmp_pd(abs_pd(x), _mm256_set1_pd(1073741824.0), _CMP_NLE_UQ);
  return _mm256_movemask_pd(big) != 0;
}

inline SinCos sincos_checked(__m256d x) {
  if (!needs_libm(x)) return sincos_pd(x);
  alignas(32) std::array<double, 4> in{};
  alignas(32) std::array<double, 4> s{};
  alignas(32) std::array<double, 4> c{};
  _mm256_store_pd(in.data(), x);
  for (int i = 0; i < 4; ++i) {
    s[i] = std::sin(in[i]);
    c[i] = std::cos(in[i]);
  }
  return {_mm256_load_pd(s.data()), _mm256_load_pd(c.data())};
}

void map_nodes(std::span<const double> centers, std::span<const double> half_widths,
               std::span<double> nodes) {
  const std::size_t panels = centers.size();
  const std::size_t vec_end = panels - panels % 4;
  for (std::size_t j = 0; j < kNodes; ++j) {
    double* row = nodes.data() + j * panels;
    const __m256d xi = _mm256_set1_pd(kXi[j]);
    std::size_t p = 0;
    for (; p < vec_end; p += 4) {
      const __m256d c = _mm256_loadu_pd(centers.data() + p);
      const __m256d hw = _mm256_loadu_pd(half_widths.data() + p);
      _mm256_storeu_pd(row + p, _mm256_add_pd(c, _mm256_mul_pd(hw, xi)));
    }
    for (; p < panels; ++p) {
      const double offset = half_widths[p] * kXi[j];
      row[p] = centers[p] + offset;
    }
  }
}

void gk_reduce_tail(std::size_t p, std::span<const double> half_widths,
                    std::span<const double> re, std::span<const double> im, GkOutput out) {
  // Same arithmetic as the scalar reference.
  const std::size_t panels = half_widths.size();
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
  out.value_re[p] = k_re * hw;
  out.value_im[p] = k_im * hw;
  out.resabs[p] = abs_sum * hw;
  out.error[p] = gk_error(raw, abs_sum * hw, asc_sum * hw);
}

void gk_reduce(std::span<const double> half_widths, std::span<const double> re,
               std::span<const double> im, GkOutput out) {
  const std::size_t panels = half_widths.size();
  const std::size_t vec_end = panels - panels % 4;
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t p = 0; p < vec_end; p += 4) {
    __m256d k_re = zero, k_im = zero, g_re = zero, g_im = zero, abs_sum = zero;
    for (std::size_t j = 0; j < kNodes; ++j) {
      const __m256d fr = _mm256_loadu_pd(re.data() + j * panels + p);
      const __m256d fi = _mm256_loadu_pd(im.data() + j * panels + p);
      const __m256d wk = _mm256_set1_pd(kWk[j]);
      const __m256d wg = _mm256_set1_pd(kWg[j]);
      k_re = _mm256_add_pd(k_re, _mm256_mul_pd(wk, fr));
      k_im = _mm256_add_pd(k_im, _mm256_mul_pd(wk, fi));
      g_re = _mm256_add_pd(g_re, _mm256_mul_pd(wg, fr));
      g_im = _mm256_add_pd(g_im, _mm256_mul_pd(wg, fi));
      const __m256d mod =
          _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(fr, fr), _mm256_mul_pd(fi, fi)));
      abs_sum = _mm256_add_pd(abs_sum, _mm256_mul_pd(wk, mod));
    }
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d mean_re = _mm256_mul_pd(half, k_re);
    const __m256d mean_im = _mm256_mul_pd(half, k_im);
    __m256d asc_sum = zero;
    for (std::size_t j = 0; j < kNodes; ++j) {
      const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(re.data() + j * panels + p), mean_re);
      const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(im.data() + j * panels + p), mean_im);
      const __m256d mod =
          _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di)));
      asc_sum = _mm256_add_pd(asc_sum, _mm256_mul_pd(_mm256_set1_pd(kWk[j]), mod));
    }
    const __m256d hw = _mm256_loadu_pd(half_widths.data() + p);
    const __m256d d_re = _mm256_mul_pd(_mm256_sub_pd(k_re, g_re), hw);
    const __m256d d_im = _mm256_mul_pd(_mm256_sub_pd(k_im, g_im), hw);
    const __m256d raw =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(d_re, d_re), _mm256_mul_pd(d_im, d_im)));
    const __m256d resabs = _mm256_mul_pd(abs_sum, hw);
    const __m256d resasc = _mm256_mul_pd(asc_sum, hw);

    const __m256d ratio = _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(200.0), raw), resasc);
    const __m256d scale = _mm256_mul_pd(ratio, _mm256_sqrt_pd(ratio));
    const __m256d scaled = _mm256_mul_pd(resasc, _mm256_min_pd(scale, _mm256_set1_pd(1.0)));
    const __m256d use_scaled = _mm256_and_pd(_mm256_cmp_pd(resasc, zero, _CMP_NEQ_UQ),
                                             _mm256_cmp_pd(raw, zero, _CMP_NEQ_UQ));
    __m256d err = _mm256_blendv_pd(raw, scaled, use_scaled);
    const __m256d floor = _mm256_mul_pd(_mm256_set1_pd(50.0 * kEps), resabs);
    const __m256d use_floor = _mm256_cmp_pd(resabs, _mm256_set1_pd(kUnderflowGuard), _CMP_GT_OQ);
    err = _mm256_blendv_pd(err, _mm256_max_pd(err, floor), use_floor);

    _mm256_storeu_pd(out.value_re.data() + p, _mm256_mul_pd(k_re, hw));
    _mm256_storeu_pd(out.value_im.data() + p, _mm256_mul_pd(k_im, hw));
    _mm256_storeu_pd(out.resabs.data() + p, resabs);
    _mm256_storeu_pd(out.error.data() + p, err);
  }
  for (std::size_t p = vec_end; p < panels; ++p) gk_reduce_tail(p, half_widths, re, im, out);
}

inline void modulate4(const double* t, double* re, double* im, double x, double h) {
  const __m256d tv = _mm256_loadu_pd(t);
  __m256d c = _mm256_set1_pd(1.0);
  __m256d s = _mm256_setzero_pd();
  if (x != 0.0) {
    const SinCos phase = sincos_checked(_mm256_mul_pd(tv, _mm256_set1_pd(x)));
    c = phase.cos;
    s = phase.sin;
  }
  __m256d k = _mm256_set1_pd(1.0);
  if (h != 0.0) {
    const __m256d u = _mm256_mul_pd(tv, _mm256_set1_pd(h));
    const __m256d ratio = _mm256_div_pd(sincos_checked(u).sin, u);
    const __m256d u2 = _mm256_mul_pd(u, u);
    const __m256d series = _mm256_add_pd(
        _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_div_pd(u2, _mm256_set1_pd(6.0))),
        _mm256_div_pd(_mm256_mul_pd(u2, u2), _mm256_set1_pd(120.0)));
    const __m256d small = _mm256_cmp_pd(abs_pd(u), _mm256_set1_pd(kSincSeriesCutoff), _CMP_LE_OQ);
    k = _mm256_blendv_pd(ratio, series, small);
  }
  const __m256d fr = _mm256_loadu_pd(re);
  const __m256d fi = _mm256_loadu_pd(im);
  const __m256d out_re = _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(fr, c), _mm256_mul_pd(fi, s)), k);
  const __m256d out_im = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(fr, s), _mm256_mul_pd(fi, c)), k);
  _mm256_storeu_pd(re, out_re);
  _mm256_storeu_pd(im, out_im);
}

void modulate(std::span<const double> t, std::span<double> re, std::span<double> im, double x,
              double h) {
  const std::size_t n = t.size();
  const std::size_t vec_end = n - n % 4;
  for (std::size_t i = 0; i < vec_end; i += 4) modulate4(&t[i], &re[i], &im[i], x, h);
  if (vec_end == n) return;
  // Pad the remainder so every element goes through the same vector path.
  std::array<double, 4> tt{}, rr{}, ii{};
  const std::size_t rest = n - vec_end;
  for (std::size_t i = 0; i < rest; ++i) {
    tt[i] = t[vec_end + i];
    rr[i] = re[vec_end + i];
    ii[i] = im[vec_end + i];
  }
  modulate4(tt.data(), rr.data(), ii.data(), x, h);
  for (std::size_t i = 0; i < rest; ++i) {
    re[vec_end + i] = rr[i];
    im[vec_end + i] = ii[i];
  }
}

double compensated_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t vec_end = n - n % 4;
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  for (std::size_t i = 0; i < vec_end; i += 4) {
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(v), _CMP_GE_OQ);
    const __m256d a = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d b = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(b, a, big_sum));
    sum = t;
  }
  alignas(32) std::array<double, 4> lanes{};
  alignas(32) std::array<double, 4> lane_comp{};
  _mm256_store_pd(lanes.data(), sum);
  _mm256_store_pd(lane_comp.data(), comp);

  // Fold lanes, then the remainder, in a fixed order.
  double s = 0.0;
  double c = lane_comp[0] + lane_comp[1] + lane_comp[2] + lane_comp[3];
  auto add = [&](double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  };
  for (const double lane : lanes) add(lane);
  for (std::size_t i = vec_end; i < n; ++i) add(values[i]);
  return s + c;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{Isa::avx2, &map_nodes, &gk_reduce, &modulate,
                                 &compensated_sum};
  return table;
}

}  // namespace trigsum::simd
