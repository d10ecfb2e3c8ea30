#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace gonstab {

struct ode_stats {
  long accepted = 0;
  long rejected = 0;
  double h_min = 0;
};

// Dormand-Prince 5(4) for Y' = F(t) Y, error measured as max|dY| / (tol * max(1, max|Y|))
template <class Scalar, class Coef>
Eigen::Matrix<Scalar, -1, -1> integrate_linear(const Coef& F, Scalar t0, Scalar t1,
                                               Eigen::Matrix<Scalar, -1, -1> Y, Scalar tol,
                                               ode_stats* stats = nullptr, long max_steps = 2000000) {
  using Mat = Eigen::Matrix<Scalar, -1, -1>;
  using std::abs;
  using std::max;
  using std::min;
  using std::pow;
  static const Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5, c5 = Scalar(8) / 9;
  static const Scalar a21 = Scalar(1) / 5;
  static const Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
  static const Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
  static const Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187, a53 = Scalar(64448) / 6561,
                      a54 = Scalar(-212) / 729;
  static const Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33, a63 = Scalar(46732) / 5247,
                      a64 = Scalar(49) / 176, a65 = Scalar(-5103) / 18656;
  static const Scalar b1 = Scalar(35) / 384, b3 = Scalar(500) / 1113, b4 = Scalar(125) / 192,
                      b5 = Scalar(-2187) / 6784, b6 = Scalar(11) / 84;
  // b5 - b4 (error weights)
  static const Scalar e1 = b1 - Scalar(5179) / 57600, e3 = b3 - Scalar(7571) / 16695,
                      e4 = b4 - Scalar(393) / 640, e5 = b5 - Scalar(-92097) / 339200,
                      e6 = b6 - Scalar(187) / 2100, e7 = Scalar(-1) / 40;

  Scalar span = t1 - t0;
  Scalar t = t0;
  Scalar h = span * pow(tol, Scalar(0.2)) * Scalar(0.1);
  Scalar h_floor = abs(span) * Scalar(1e-14);
  ode_stats st;
  st.h_min = static_cast<double>(abs(span));

  Mat k1 = F(t) * Y, k2, k3, k4, k5, k6, k7, Yn, E;
  while (t < t1) {
    if (st.accepted + st.rejected > max_steps)
      throw integration_failure("step count exceeded " + std::to_string(max_steps));
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    k2 = F(t + c2 * h) * (Y + h * (a21 * k1));
    k3 = F(t + c3 * h) * (Y + h * (a31 * k1 + a32 * k2));
    k4 = F(t + c4 * h) * (Y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    k5 = F(t + c5 * h) * (Y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    k6 = F(t + h) * (Y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Yn = Y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = F(t + h) * Yn;
    E = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    Scalar scale = max(Scalar(1), max(Y.cwiseAbs().maxCoeff(), Yn.cwiseAbs().maxCoeff()));
    Scalar err = E.cwiseAbs().maxCoeff() / (tol * scale);
    if (!(err == err)) throw integration_failure("non-finite state during integration");
    if (err <= 1) {
      t = last ? t1 : t + h;
      Y = Yn;
      k1 = k7;
      ++st.accepted;
      st.h_min = min(st.h_min, static_cast<double>(h));
      if (last) break;
    } else {
      ++st.rejected;
    }
    Scalar fac = err == 0 ? Scalar(5) : Scalar(0.9) * pow(err, Scalar(-0.2));
    h *= min(Scalar(5), max(Scalar(0.2), fac));
    if (h < h_floor) throw integration_failure("step size collapsed below 1e-14 of the interval");
  }
  if (stats) *stats = st;
  return Y;
}

}  // namespace gonstab
