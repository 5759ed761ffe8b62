#pragma once

#include <array>
#include <cmath>
#include <limits>

namespace trigsum::simd::detail {

// 15-point Kronrod abscissae on [-1, 1] in increasing order, with the
// matching Kronrod weights and the weights of the embedded 7-point Gauss rule
// (zero at the Kronrod-only nodes). Values from QUADPACK qk15.
inline constexpr std::array<double, 15> kXi = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr std::array<double, 15> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr std::array<double, 15> kWg = {
    0.0, 0.129484966168869693270611432679082, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.417959183673469387755102040816327,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.129484966168869693270611432679082, 0.0};

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kUnderflowGuard = std::numeric_limits<double>::min() / (50.0 * kEps);

// QUADPACK error heuristic shared by every kernel variant:
//   err = resasc * min(1, (200 |K - G| / resasc)^1.5), floored at 50 eps resabs.
// x * sqrt(x) replaces pow(x, 1.5) so scalar and vector paths round identically.
inline double gk_error(double raw, double resabs, double resasc) noexcept {
  double err = raw;
  if (resasc != 0.0 && err != 0.0) {
    const double r = 200.0 * err / resasc;
    const double scale = r * std::sqrt(r);
    err = resasc * (scale < 1.0 ? scale : 1.0);
  }
  if (resabs > kUnderflowGuard) {
    const double floor = 50.0 * kEps * resabs;
    err = err > floor ? err : floor;
  }
  return err;
}

inline constexpr double kSincSeriesCutoff = 1e-4;

}  // namespace trigsum::simd::detail
