#pragma once

// Adaptive explicit Runge-Kutta 8(5,3) integrator (Dormand-Prince DOP853
// coefficients, Hairer-Norsett-Wanner). Fixed-dimension states, no dense
// output. Used for both the 6-state flow and the 42-dimensional
// state-plus-variational system.

#include "patrol/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace patrol::dop853 {

struct Controls {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  long max_steps = 2000000;
};

namespace coeff {
inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;

inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;

inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;

// 3rd-order error weights (applied to k1, k9, k12)
inline constexpr double bhh1 = 0.244094488188976377952755905512e+00;
inline constexpr double bhh2 = 0.733846688281611857341361741547e+00;
inline constexpr double bhh3 = 0.220588235294117647058823529412e-01;

// 5th-order error weights
inline constexpr double er1 = 0.1312004499419488073250102996e-01;
inline constexpr double er6 = -0.1225156446376204440720569753e+01;
inline constexpr double er7 = -0.4957589496572501915214079952e+00;
inline constexpr double er8 = 0.1664377182454986536961530415e+01;
inline constexpr double er9 = -0.3503288487499736816886487290e+00;
inline constexpr double er10 = 0.3341791187130174790297318841e+00;
inline constexpr double er11 = 0.8192320648511571246570742613e-01;
inline constexpr double er12 = -0.2235530786388629525884427845e-01;
}  // namespace coeff

/// Integrates dy/dt = f(t, y) from t0 to t1. `F` has signature
/// void(double t, const Vec& y, Vec& dydt). Throws PropagationError on
/// step-size underflow, non-finite states, or step budget exhaustion.
template <int N, typename F>
Eigen::Matrix<double, N, 1> integrate(const F& f, Eigen::Matrix<double, N, 1> y,
                                      double t0, double t1, const Controls& ctl) {
  using Vec = Eigen::Matrix<double, N, 1>;
  using namespace coeff;

  if (t1 == t0) return y;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double atol = ctl.abs_tol;
  const double rtol = ctl.rel_tol;

  Vec k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, ytmp, ynew;
  double t = t0;
  f(t, y, k1);

  // Starting step size (Hairer HINIT style)
  double h;
  {
    double dnf = 0.0, dny = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sk = atol + rtol * std::abs(y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h0 = std::min(h0, ctl.max_step);
    ytmp = y + dir * h0 * k1;
    f(t + dir * h0, ytmp, k2);
    double der2 = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sk = atol + rtol * std::abs(y[i]);
      der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
    }
    der2 = std::sqrt(der2) / h0;
    const double der12 = std::max(der2, std::sqrt(dnf));
    double h1 = (der12 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                 : std::pow(0.01 / der12, 1.0 / 8.0);
    h = std::min({100.0 * h0, h1, ctl.max_step, std::abs(t1 - t0)});
  }

  const double safe = 0.9;
  const double fac_shrink = 3.0;   // max factor by which h may shrink
  const double fac_grow = 6.0;     // max factor by which h may grow
  long nstep = 0;

  while (dir * (t1 - t) > 0.0) {
    if (++nstep > ctl.max_steps) {
      throw PropagationError("integrator exceeded step budget");
    }
    h = std::min(h, ctl.max_step);
    if (dir * (t + dir * h - t1) > 0.0) h = std::abs(t1 - t);
    if (t + dir * h == t) {
      throw PropagationError("step size underflow at t=" + std::to_string(t));
    }
    const double hs = dir * h;

    ytmp = y + hs * (a21 * k1);
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a64 * k4 + a65 * k5);
    f(t + c6 * hs, ytmp, k6);
    ytmp = y + hs * (a71 * k1 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + c7 * hs, ytmp, k7);
    ytmp = y + hs * (a81 * k1 + a84 * k4 + a85 * k5 + a86 * k6 + a87 * k7);
    f(t + c8 * hs, ytmp, k8);
    ytmp = y + hs * (a91 * k1 + a94 * k4 + a95 * k5 + a96 * k6 + a97 * k7 + a98 * k8);
    f(t + c9 * hs, ytmp, k9);
    ytmp = y + hs * (a101 * k1 + a104 * k4 + a105 * k5 + a106 * k6 + a107 * k7 +
                     a108 * k8 + a109 * k9);
    f(t + c10 * hs, ytmp, k10);
    ytmp = y + hs * (a111 * k1 + a114 * k4 + a115 * k5 + a116 * k6 + a117 * k7 +
                     a118 * k8 + a119 * k9 + a1110 * k10);
    f(t + c11 * hs, ytmp, k11);
    ytmp = y + hs * (a121 * k1 + a124 * k4 + a125 * k5 + a126 * k6 + a127 * k7 +
                     a128 * k8 + a129 * k9 + a1210 * k10 + a1211 * k11);
    f(t + hs, ytmp, k12);

    const Vec incr = b1 * k1 + b6 * k6 + b7 * k7 + b8 * k8 + b9 * k9 + b10 * k10 +
                     b11 * k11 + b12 * k12;
    ynew = y + hs * incr;

    // Combined 5th/3rd order error estimate
    double err5 = 0.0, err3 = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double e3 = incr[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k12[i];
      const double e5 = er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] +
                        er9 * k9[i] + er10 * k10[i] + er11 * k11[i] + er12 * k12[i];
      err3 += (e3 / sk) * (e3 / sk);
      err5 += (e5 / sk) * (e5 / sk);
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) deno = 1.0;
    const double err = h * err5 * std::sqrt(1.0 / (N * deno));

    const double fac11 = std::pow(std::max(err, 1e-32), 1.0 / 8.0);
    if (err <= 1.0) {
      t = (dir * (t + hs - t1) >= 0.0) ? t1 : t + hs;
      y = ynew;
      if (!y.allFinite()) {
        throw PropagationError("non-finite state at t=" + std::to_string(t));
      }
      k1 = k12;
      f(t, y, k1);
      h = h / std::max(1.0 / fac_grow, fac11 / safe);
    } else {
      h = h / std::min(fac_shrink, fac11 / safe);
    }
  }
  return y;
}

}  // namespace patrol::dop853
