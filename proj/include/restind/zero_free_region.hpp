#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "restind/error.hpp"

namespace restind {

/// Inputs of the explicit zero-free region. c_zfr, C_G and envelope_C stand for
/// effective constants without published values; they are configuration.
struct RegionParams {
  double logD = 0;
  double epsilon = 0;
  std::uint64_t order_G = 1;
  std::uint64_t deg_k = 1;
  double C_G = 6;
  double c_zfr = 0.1;
  double envelope_C = 0.1;

  double delta() const { return epsilon / (20.0 * static_cast<double>(order_G)); }
  double eps0() const { return epsilon / (6.0 * C_G * static_cast<double>(deg_k)); }
  /// Branch cut in u = log t: the near branch holds while u <= D^eps0.
  double branch_u() const { return std::exp(eps0() * logD); }

  void validate() const {
    auto finite_pos = [](double v) { return std::isfinite(v) && v > 0; };
    if (!finite_pos(logD)) fail(ErrorCode::DomainError, "logD must be finite and positive");
    if (!(epsilon > 0 && epsilon < 1)) fail(ErrorCode::DomainError, "epsilon must lie in (0,1)");
    if (order_G < 1 || deg_k < 1) fail(ErrorCode::DomainError, "|G| and [k:Q] must be positive");
    if (!(std::isfinite(C_G) && C_G >= 6)) fail(ErrorCode::DomainError, "C_G must be at least 6");
    if (!finite_pos(c_zfr) || !finite_pos(envelope_C)) fail(ErrorCode::DomainError, "constants must be positive");
    if (delta() > 1.0 / 40) fail(ErrorCode::DomainError, "delta = epsilon/(20|G|) exceeds 1/40");
  }
};

namespace zfr {

inline double log3() { return std::log(3.0); }

/// omega_K at t = e^u.
inline double omega_at(double u, const RegionParams& p) {
  const double k = static_cast<double>(p.deg_k);
  if (u <= p.branch_u()) return 2 * p.delta() * p.logD / (p.logD + k * u);
  return p.c_zfr / (p.logD + static_cast<double>(p.order_G) * k * u);
}

inline double phi1(double u, double logx, const RegionParams& p) {
  return 2 * p.delta() * p.logD * logx / (p.logD + static_cast<double>(p.deg_k) * u) + u;
}

inline double phi2(double u, double logx, const RegionParams& p) {
  return p.c_zfr * logx / (p.logD + static_cast<double>(p.order_G * p.deg_k) * u) + u;
}

inline double u1(double logx, const RegionParams& p) {
  const double k = static_cast<double>(p.deg_k);
  return std::sqrt(2 * p.delta() * p.logD * logx / k) - p.logD / k;
}

inline double u2(double logx, const RegionParams& p) {
  const double gk = static_cast<double>(p.order_G * p.deg_k);
  return std::sqrt(p.c_zfr * logx / gk) - p.logD / gk;
}

}  // namespace zfr

inline double omega_K(double t, const RegionParams& p) {
  p.validate();
  if (!(t >= 3)) fail(ErrorCode::DomainError, "omega_K needs t >= 3");
  return zfr::omega_at(std::log(t), p);
}

struct EtaValue {
  double grid = 0;
  double closed_form = 0;
  double argmin_u = 0;  // log t at the grid minimum
  bool near_branch = true;
  std::size_t nodes = 0;
};

/// eta_K(x) = inf_{t >= 3} (omega_K(t) log x + log t), given log x.
inline EtaValue eta_K_log(double logx, const RegionParams& p, std::size_t nodes_per_branch = 10000) {
  p.validate();
  if (!(logx >= std::log(3.0)) || !std::isfinite(logx)) fail(ErrorCode::DomainError, "eta_K needs 3 <= x < inf");
  const double lo = zfr::log3();
  const double U = p.branch_u();
  const bool near = std::isfinite(U) && U >= lo;
  const double far_lo = std::max(lo, std::isfinite(U) ? U : std::numeric_limits<double>::infinity());

  // Closed form from the convexity of phi_1 and phi_2 on their branches.
  double closed = std::numeric_limits<double>::infinity();
  if (near) {
    closed = std::min({closed, zfr::phi1(lo, logx, p), zfr::phi1(U, logx, p)});
    const double a = zfr::u1(logx, p);
    if (a >= lo && a <= U) closed = std::min(closed, zfr::phi1(a, logx, p));
  }
  if (std::isfinite(far_lo)) closed = std::min(closed, zfr::phi2(std::max(far_lo, zfr::u2(logx, p)), logx, p));

  // The objective is at least u, so nothing beyond V = objective(log 3) can win.
  const double V = zfr::omega_at(lo, p) * logx + lo;
  EtaValue out;
  out.grid = std::numeric_limits<double>::infinity();
  auto search = [&](double a, double b, auto&& f, bool is_near) {
    if (!(a <= b)) return;
    const std::size_t n = std::max<std::size_t>(nodes_per_branch, 2);
    const double ratio = b / a;
    std::size_t best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    std::vector<double> us(n);
    for (std::size_t i = 0; i < n; ++i) {
      us[i] = i + 1 == n ? b : a * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n - 1));
      const double v = f(us[i]);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    out.nodes += n;
    // golden-section refinement between the neighbours of the best node
    double l = us[best == 0 ? 0 : best - 1], r = us[best + 1 == n ? n - 1 : best + 1];
    const double g = (std::sqrt(5.0) - 1) / 2;
    double m1 = r - g * (r - l), m2 = l + g * (r - l);
    double f1 = f(m1), f2 = f(m2);
    for (int it = 0; it < 200 && r - l > 1e-15 * std::max(1.0, r); ++it) {
      if (f1 < f2) {
        r = m2;
        m2 = m1;
        f2 = f1;
        m1 = r - g * (r - l);
        f1 = f(m1);
      } else {
        l = m1;
        m1 = m2;
        f1 = f2;
        m2 = l + g * (r - l);
        f2 = f(m2);
      }
    }
    for (auto [u, v] : {std::pair{us[best], best_v}, std::pair{m1, f1}, std::pair{m2, f2}})
      if (v < out.grid) {
        out.grid = v;
        out.argmin_u = u;
        out.near_branch = is_near;
      }
  };
  // the grid evaluates the definition directly, branch by branch
  auto objective = [&](double u) { return zfr::omega_at(u, p) * logx + u; };
  if (near) search(lo, std::min(U, V), objective, true);
  const double far_start = std::max(lo, std::nextafter(U, std::numeric_limits<double>::infinity()));
  if (std::isfinite(far_lo) && far_start <= V) search(far_start, V, objective, false);
  out.closed_form = closed;
  return out;
}

inline EtaValue eta_K(double x, const RegionParams& p) {
  if (!(x >= 3)) fail(ErrorCode::DomainError, "eta_K needs x >= 3");
  return eta_K_log(std::log(x), p);
}

struct Envelope {
  double value = 0;          // x exp(-C sqrt(log x))
  double log_threshold = 0;  // log of (log D)^(81|G|/eps)
  bool above_threshold = false;
};

inline Envelope pnt_envelope(double x, const RegionParams& p) {
  p.validate();
  if (!(x >= 3) || !std::isfinite(x)) fail(ErrorCode::DomainError, "envelope needs 3 <= x < inf");
  Envelope e;
  const double lx = std::log(x);
  e.value = x * std::exp(-p.envelope_C * std::sqrt(lx));
  e.log_threshold = 81.0 * static_cast<double>(p.order_G) / p.epsilon * std::log(p.logD);
  e.above_threshold = lx >= e.log_threshold;
  return e;
}

}  // namespace restind
