#include "geocut/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace geocut {

namespace {

struct SimpsonState {
  const Fn1* f;
  double abs_tol;
  int max_depth;
  double error;
};

double simpson_rule(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(SimpsonState& st, double a, double b, double fa,
                       double fm, double fb, double whole, double tol,
                       int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm);
  const double frm = (*st.f)(rm);
  const double left = simpson_rule(fa, flm, fm, m - a);
  const double right = simpson_rule(fm, frm, fb, b - m);
  const double diff = left + right - whole;
  // a couple of forced levels keep narrow features from being accepted as zero
  if (depth >= st.max_depth || (depth >= 2 && std::abs(diff) <= 15.0 * tol)) {
    st.error += std::abs(diff) / 15.0;
    return left + right + diff / 15.0;
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const Fn1& f, double a, double b,
                                  double abs_tol, int max_depth) {
  if (a == b) return {0.0, 0.0};
  SimpsonState st{&f, abs_tol, max_depth, 0.0};
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson_rule(fa, fm, fb, b - a);
  const double value = simpson_recurse(st, a, b, fa, fm, fb, whole, abs_tol, 0);
  return {value, st.error};
}

std::vector<std::pair<double, double>> intervals_above(const Fn1& g, double lo,
                                                       double hi, double level,
                                                       int scan_points) {
  std::vector<std::pair<double, double>> result;
  if (!(hi > lo)) return result;
  const int n = std::max(scan_points, 8);
  const double h = (hi - lo) / n;

  auto bisect = [&](double a, double b) {
    // invariant on entry: (g(a) >= level) != (g(b) >= level)
    bool above_a = g(a) >= level;
    for (int it = 0; it < 80 && b - a > 1e-15 * (hi - lo); ++it) {
      const double m = 0.5 * (a + b);
      if ((g(m) >= level) == above_a)
        a = m;
      else
        b = m;
    }
    return 0.5 * (a + b);
  };

  bool open = g(lo) >= level;
  double start = lo;
  double prev = lo;
  for (int i = 1; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + i * h;
    const bool above = g(x) >= level;
    if (above != open) {
      const double c = bisect(prev, x);
      if (open)
        result.emplace_back(start, c);
      else
        start = c;
      open = above;
    }
    prev = x;
  }
  if (open) result.emplace_back(start, hi);
  return result;
}

QuadratureResult integrate_where_above(const Fn1& g, const Fn1& f, double lo,
                                       double hi, double level, double abs_tol,
                                       int scan_points) {
  QuadratureResult total;
  const auto pieces = intervals_above(g, lo, hi, level, scan_points);
  if (pieces.empty()) return total;
  const double tol = abs_tol / static_cast<double>(pieces.size());
  for (const auto& [a, b] : pieces) {
    const QuadratureResult r = adaptive_simpson(f, a, b, tol);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

QuadratureResult adaptive_tensor_2d(const Fn2& f, double x_lo, double x_hi,
                                    double y_lo, double y_hi, double abs_tol) {
  if (!(x_hi > x_lo) || !(y_hi > y_lo)) return {0.0, 0.0};
  // outer tolerance gets half the budget, inner slices share the other half
  const double inner_tol = 0.5 * abs_tol / (x_hi - x_lo);
  double inner_error = 0.0;
  Fn1 outer = [&](double x) {
    const QuadratureResult r = adaptive_simpson(
        [&](double y) { return f(x, y); }, y_lo, y_hi, inner_tol);
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };
  QuadratureResult r = adaptive_simpson(outer, x_lo, x_hi, 0.5 * abs_tol);
  r.error += inner_error * (x_hi - x_lo);
  return r;
}

McResult stratified_mc(const FnD& f, const Box& box, int strata_per_dim,
                       long long samples_per_stratum, Rng& rng) {
  const int d = box.dim();
  const int s = std::max(strata_per_dim, 1);
  long long n_strata = 1;
  for (int c = 0; c < d; ++c) n_strata *= s;

  const double cell_volume = box.volume() / static_cast<double>(n_strata);
  Vector width = (box.hi - box.lo) / static_cast<double>(s);

  double value = 0.0;
  double var_sum = 0.0;
  Vector x(d);
  std::vector<int> idx(d, 0);
  for (long long cell = 0; cell < n_strata; ++cell) {
    long long rest = cell;
    for (int c = 0; c < d; ++c) {
      idx[c] = static_cast<int>(rest % s);
      rest /= s;
    }
    double mean = 0.0, m2 = 0.0;
    for (long long i = 0; i < samples_per_stratum; ++i) {
      for (int c = 0; c < d; ++c)
        x[c] = box.lo[c] + (idx[c] + rng.uniform()) * width[c];
      const double y = f(x);
      const double delta = y - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (y - mean);
    }
    value += mean * cell_volume;
    if (samples_per_stratum > 1) {
      const double var = m2 / static_cast<double>(samples_per_stratum - 1);
      var_sum += var * cell_volume * cell_volume /
                 static_cast<double>(samples_per_stratum);
    }
  }
  return {value, std::sqrt(var_sum), n_strata * samples_per_stratum};
}

}  // namespace geocut
