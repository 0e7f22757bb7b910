#include "torcap/series.hpp"

#include "torcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace torcap {

namespace {

void check_point(const CoeffArray& f, std::span<const double> theta) {
  if (theta.size() != f.n) throw std::invalid_argument("theta dimension != series dimension");
}

// Collapse the coefficient tensor against one weight vector per axis:
// returns sum_alpha a_alpha prod_j w_j[alpha_j], a length-d vector.
// Axes are reduced last-to-first so every pass is contiguous.
std::vector<cplx> contract(const CoeffArray& f,
                           const std::vector<std::vector<cplx>>& axis_weights) {
  std::vector<cplx> buf = f.values;
  std::size_t lead = f.flat_count(); // product of remaining axis extents
  for (std::size_t ax = f.n; ax-- > 0;) {
    const std::size_t extent = f.shape[ax];
    const std::vector<cplx>& w = axis_weights[ax];
    lead /= extent;
    std::vector<cplx> next(lead * f.d, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < lead; ++i) {
      const cplx* src = buf.data() + i * extent * f.d;
      cplx* dst = next.data() + i * f.d;
      for (std::size_t k = 0; k < extent; ++k) {
        const cplx wk = w[k];
        if (wk == cplx(0.0, 0.0)) continue;
        for (std::size_t c = 0; c < f.d; ++c) dst[c] += wk * src[k * f.d + c];
      }
    }
    buf = std::move(next);
  }
  return buf;
}

std::vector<cplx> phase_weights(std::size_t extent, double theta) {
  std::vector<cplx> w(extent);
  const cplx rot = std::polar(1.0, theta);
  cplx cur(1.0, 0.0);
  for (std::size_t k = 0; k < extent; ++k) {
    w[k] = cur;
    cur *= rot;
  }
  return w;
}

double norm_of(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

} // namespace

std::string to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::converged: return "converged";
    case ScanVerdict::diverged: return "diverged";
    default: return "inconclusive";
  }
}

std::vector<cplx> rect_partial_sum(const CoeffArray& f, std::span<const std::size_t> N,
                                   std::span<const double> theta) {
  check_point(f, theta);
  if (N.size() != f.n) throw std::invalid_argument("rect_partial_sum: N dimension mismatch");
  std::vector<std::vector<cplx>> w(f.n);
  for (std::size_t ax = 0; ax < f.n; ++ax) {
    if (N[ax] >= f.shape[ax])
      throw std::out_of_range("rect_partial_sum: N exceeds stored shape");
    w[ax] = phase_weights(f.shape[ax], theta[ax]);
    for (std::size_t k = N[ax] + 1; k < f.shape[ax]; ++k) w[ax][k] = cplx(0.0, 0.0);
  }
  return contract(f, w);
}

SummationScan pringsheim_scan(const CoeffArray& f, std::span<const double> theta,
                              std::span<const std::size_t> n_max, double tol) {
  check_point(f, theta);
  if (n_max.size() != f.n) throw std::invalid_argument("pringsheim_scan: N_max dimension");
  for (std::size_t ax = 0; ax < f.n; ++ax)
    if (n_max[ax] >= f.shape[ax])
      throw std::out_of_range("pringsheim_scan: N_max exceeds stored shape");

  SummationScan scan;
  scan.theta.assign(theta.begin(), theta.end());
  scan.n_max.assign(n_max.begin(), n_max.end());

  // box extents N_max_j + 1
  std::vector<std::size_t> ext(f.n);
  std::size_t count = 1;
  for (std::size_t ax = 0; ax < f.n; ++ax) {
    ext[ax] = n_max[ax] + 1;
    count *= ext[ax];
  }

  // terms a_alpha e^{i(alpha,theta)} restricted to the box
  std::vector<cplx> terms(count * f.d);
  {
    std::vector<std::vector<cplx>> ph(f.n);
    for (std::size_t ax = 0; ax < f.n; ++ax) ph[ax] = phase_weights(ext[ax], theta[ax]);
    std::vector<std::size_t> alpha(f.n, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
      cplx phase(1.0, 0.0);
      std::size_t rem = flat, src = 0;
      for (std::size_t ax = 0; ax < f.n; ++ax) {
        // decode row-major in box extents
        std::size_t stride = 1;
        for (std::size_t j = ax + 1; j < f.n; ++j) stride *= ext[j];
        alpha[ax] = rem / stride;
        rem %= stride;
        phase *= ph[ax][alpha[ax]];
        src = src * f.shape[ax] + alpha[ax];
      }
      for (std::size_t c = 0; c < f.d; ++c)
        terms[flat * f.d + c] = f.values[src * f.d + c] * phase;
    }
  }

  // n-dimensional prefix sums: after this, terms[N] = S_N
  {
    std::size_t stride = 1;
    for (std::size_t ax = f.n; ax-- > 0;) {
      const std::size_t extent = ext[ax];
      const std::size_t block = stride * extent;
      for (std::size_t base = 0; base < count; base += block) {
        for (std::size_t k = 1; k < extent; ++k) {
          cplx* cur = terms.data() + (base + k * stride) * f.d;
          const cplx* prev = terms.data() + (base + (k - 1) * stride) * f.d;
          for (std::size_t off = 0; off < stride * 1; ++off) {
            // contiguous run of `stride` coefficient vectors
            for (std::size_t c = 0; c < f.d; ++c)
              cur[off * f.d + c] += prev[off * f.d + c];
          }
        }
      }
      stride *= extent;
    }
  }

  // one pass: global sup, dyadic shell sups, top-decile bounding box
  std::vector<std::size_t> decile_lo(f.n), half(f.n), quarter(f.n);
  for (std::size_t ax = 0; ax < f.n; ++ax) {
    decile_lo[ax] = static_cast<std::size_t>(std::floor(0.9 * static_cast<double>(n_max[ax])));
    half[ax] = n_max[ax] / 2;
    quarter[ax] = n_max[ax] / 4;
  }
  std::vector<double> box_lo(2 * f.d, std::numeric_limits<double>::infinity());
  std::vector<double> box_hi(2 * f.d, -std::numeric_limits<double>::infinity());

  std::vector<std::size_t> alpha(f.n, 0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    {
      std::size_t rem = flat;
      for (std::size_t ax = f.n; ax-- > 0;) {
        alpha[ax] = rem % ext[ax];
        rem /= ext[ax];
      }
    }
    const cplx* v = terms.data() + flat * f.d;
    const double nv = norm_of(std::span<const cplx>(v, f.d));
    scan.sup_norm = std::max(scan.sup_norm, nv);
    bool in_half = true, in_quarter = true, in_decile = true;
    for (std::size_t ax = 0; ax < f.n; ++ax) {
      in_half = in_half && alpha[ax] <= half[ax];
      in_quarter = in_quarter && alpha[ax] <= quarter[ax];
      in_decile = in_decile && alpha[ax] >= decile_lo[ax];
    }
    if (in_quarter) scan.shell_sup[0] = std::max(scan.shell_sup[0], nv);
    if (in_half) scan.shell_sup[1] = std::max(scan.shell_sup[1], nv);
    if (in_decile) {
      for (std::size_t c = 0; c < f.d; ++c) {
        box_lo[2 * c] = std::min(box_lo[2 * c], v[c].real());
        box_hi[2 * c] = std::max(box_hi[2 * c], v[c].real());
        box_lo[2 * c + 1] = std::min(box_lo[2 * c + 1], v[c].imag());
        box_hi[2 * c + 1] = std::max(box_hi[2 * c + 1], v[c].imag());
      }
    }
  }
  scan.shell_sup[2] = scan.sup_norm;
  scan.final_value.assign(terms.end() - static_cast<std::ptrdiff_t>(f.d), terms.end());

  double diam_sq = 0.0;
  for (std::size_t i = 0; i < 2 * f.d; ++i) {
    const double w = box_hi[i] - box_lo[i];
    diam_sq += w * w;
  }
  scan.oscillation_tail = std::sqrt(diam_sq);

  if (scan.oscillation_tail < tol) {
    scan.verdict = ScanVerdict::converged;
  } else {
    const double scale = f.dirichlet_norm();
    const bool growing =
        scan.shell_sup[0] < scan.shell_sup[1] && scan.shell_sup[1] < scan.shell_sup[2];
    bool shells_valid = true;
    for (std::size_t ax = 0; ax < f.n; ++ax) shells_valid = shells_valid && n_max[ax] >= 4;
    scan.verdict = (shells_valid && growing && scan.sup_norm > 10.0 * scale)
                       ? ScanVerdict::diverged
                       : ScanVerdict::inconclusive;
  }
  return scan;
}

std::vector<cplx> abel_mean(const CoeffArray& f, std::span<const double> r,
                            std::span<const double> theta) {
  check_point(f, theta);
  if (r.size() != f.n) throw std::invalid_argument("abel_mean: r dimension mismatch");
  std::vector<std::vector<cplx>> w(f.n);
  for (std::size_t ax = 0; ax < f.n; ++ax) {
    if (r[ax] < 0.0 || r[ax] >= 1.0)
      throw std::invalid_argument("abel_mean: radii must lie in [0, 1)");
    w[ax] = phase_weights(f.shape[ax], theta[ax]);
    double rp = 1.0;
    for (std::size_t k = 0; k < f.shape[ax]; ++k) {
      w[ax][k] *= rp;
      rp *= r[ax];
    }
  }
  return contract(f, w);
}

double abel_truncation_bound(const CoeffArray& f, std::span<const double> r) {
  double rmax = 0.0;
  for (std::size_t ax = 0; ax < f.n; ++ax)
    rmax = std::max(rmax, std::pow(r[ax], static_cast<double>(f.shape[ax])));
  return rmax * f.dirichlet_norm();
}

double fejer_gap(const CoeffArray& f, std::size_t N, double theta, std::size_t axis) {
  if (N == 0) throw std::invalid_argument("fejer_gap: N must be positive");
  if (axis >= f.n) throw std::invalid_argument("fejer_gap: axis out of range");
  if (N >= f.shape[axis]) throw std::out_of_range("fejer_gap: N exceeds stored shape");

  const std::size_t extent = f.shape[axis];
  std::size_t inner = 1; // stride of the axis
  for (std::size_t ax = axis + 1; ax < f.n; ++ax) inner *= f.shape[ax];
  inner *= f.d;
  std::size_t outer = 1;
  for (std::size_t ax = 0; ax < axis; ++ax) outer *= f.shape[ax];

  const std::vector<cplx> ph = phase_weights(extent, theta);
  const double rr = 1.0 - 1.0 / static_cast<double>(N);
  double gap_sq = 0.0;
  std::vector<cplx> diff(inner);
  for (std::size_t o = 0; o < outer; ++o) {
    std::fill(diff.begin(), diff.end(), cplx(0.0, 0.0));
    const cplx* base = f.values.data() + o * extent * inner;
    double rp = 1.0;
    for (std::size_t k = 0; k < extent; ++k) {
      const cplx wk = ph[k] * ((k <= N ? 1.0 : 0.0) - rp); // S_N - P_{1-1/N}
      rp *= rr;
      if (wk == cplx(0.0, 0.0)) continue;
      const cplx* src = base + k * inner;
      for (std::size_t i = 0; i < inner; ++i) diff[i] += wk * src[i];
    }
    for (const cplx& z : diff) gap_sq += std::norm(z);
  }
  return std::sqrt(gap_sq);
}

std::vector<cplx> strong_diff_mean(const CoeffArray& f, std::span<const double> h,
                                   std::span<const double> theta) {
  check_point(f, theta);
  if (h.size() != f.n) throw std::invalid_argument("strong_diff_mean: h dimension mismatch");
  std::vector<std::vector<cplx>> w(f.n);
  for (std::size_t ax = 0; ax < f.n; ++ax) {
    if (!(h[ax] > 0.0 && h[ax] < std::numbers::pi))
      throw std::invalid_argument("strong_diff_mean: h_j must lie in (0, pi)");
    w[ax] = phase_weights(f.shape[ax], theta[ax]);
    for (std::size_t k = 1; k < f.shape[ax]; ++k) {
      const double x = static_cast<double>(k) * h[ax];
      w[ax][k] *= std::sin(x) / x;
    }
    // k = 0 multiplier is exactly 1 (the limit value)
  }
  return contract(f, w);
}

std::vector<cplx> radial_derivative(const CoeffArray& f, std::span<const double> r,
                                    std::span<const double> theta) {
  check_point(f, theta);
  if (r.size() != f.n) throw std::invalid_argument("radial_derivative: r dimension mismatch");
  std::vector<std::vector<cplx>> w(f.n);
  for (std::size_t ax = 0; ax < f.n; ++ax) {
    if (r[ax] < 0.0 || r[ax] >= 1.0)
      throw std::invalid_argument("radial_derivative: radii must lie in [0, 1)");
    w[ax] = phase_weights(f.shape[ax], theta[ax]);
    w[ax][0] = cplx(0.0, 0.0);
    double rp = 1.0; // r^{k-1}, with r^0 = 1 even at r = 0
    for (std::size_t k = 1; k < f.shape[ax]; ++k) {
      w[ax][k] *= static_cast<double>(k) * rp;
      rp *= r[ax];
    }
  }
  return contract(f, w);
}

RadialVariationResult radial_variation(const CoeffArray& f, std::span<const double> theta,
                                       std::size_t depth) {
  check_point(f, theta);
  if (depth == 0 || depth > 12)
    throw std::invalid_argument("radial_variation: depth must be in 1..12");

  RadialVariationResult out;
  out.theta.assign(theta.begin(), theta.end());

  constexpr std::size_t q = 96; // shared across levels so the level values nest
  const GaussLegendre base = gauss_legendre(q);

  // fold phases into the coefficients once
  CoeffArray g = f;
  {
    std::vector<std::vector<cplx>> ph(f.n);
    for (std::size_t ax = 0; ax < f.n; ++ax) ph[ax] = phase_weights(f.shape[ax], theta[ax]);
    std::vector<std::size_t> alpha(f.n, 0);
    const std::size_t count = f.flat_count();
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat;
      cplx phase(1.0, 0.0);
      for (std::size_t ax = f.n; ax-- > 0;) {
        phase *= ph[ax][rem % f.shape[ax]];
        rem /= f.shape[ax];
      }
      for (std::size_t c = 0; c < f.d; ++c) g.values[flat * f.d + c] *= phase;
    }
  }

  for (std::size_t k = 1; k <= depth; ++k) {
    const double delta = std::pow(2.0, -static_cast<double>(k));
    const double upper = 1.0 - delta;
    // per-axis node weight matrices W[node][alpha] = alpha * r^{alpha-1}
    std::vector<double> nodes(q), wq(q);
    for (std::size_t i = 0; i < q; ++i) {
      nodes[i] = 0.5 * upper * (base.nodes[i] + 1.0);
      wq[i] = 0.5 * upper * base.weights[i];
    }
    std::vector<std::vector<std::vector<double>>> W(f.n);
    for (std::size_t ax = 0; ax < f.n; ++ax) {
      W[ax].assign(q, std::vector<double>(f.shape[ax], 0.0));
      for (std::size_t i = 0; i < q; ++i) {
        double rp = 1.0;
        for (std::size_t a = 1; a < f.shape[ax]; ++a) {
          W[ax][i][a] = static_cast<double>(a) * rp;
          rp *= nodes[i];
        }
      }
    }
    // contract axes one at a time: coefficients -> node grid
    std::vector<cplx> buf = g.values;
    std::vector<std::size_t> ext(f.shape.begin(), f.shape.end());
    for (std::size_t ax = f.n; ax-- > 0;) {
      std::size_t lead = 1;
      for (std::size_t j = 0; j < ax; ++j) lead *= ext[j];
      std::size_t trail = f.d;
      for (std::size_t j = ax + 1; j < f.n; ++j) trail *= ext[j];
      const std::size_t extent = ext[ax];
      std::vector<cplx> next(lead * q * trail, cplx(0.0, 0.0));
      for (std::size_t l = 0; l < lead; ++l)
        for (std::size_t i = 0; i < q; ++i) {
          cplx* dst = next.data() + (l * q + i) * trail;
          const std::vector<double>& row = W[ax][i];
          for (std::size_t a = 1; a < extent; ++a) {
            const double wv = row[a];
            const cplx* src = buf.data() + (l * extent + a) * trail;
            for (std::size_t t = 0; t < trail; ++t) dst[t] += wv * src[t];
          }
        }
      buf = std::move(next);
      ext[ax] = q;
    }
    // integrate the coefficient-space norm over the node grid
    double integral = 0.0;
    std::size_t node_count = 1;
    for (std::size_t ax = 0; ax < f.n; ++ax) node_count *= q;
    for (std::size_t flat = 0; flat < node_count; ++flat) {
      double wgt = 1.0;
      std::size_t rem = flat;
      for (std::size_t ax = f.n; ax-- > 0;) {
        wgt *= wq[rem % q];
        rem /= q;
      }
      double mag = 0.0;
      for (std::size_t c = 0; c < f.d; ++c) mag += std::norm(buf[flat * f.d + c]);
      integral += wgt * std::sqrt(mag);
    }
    out.levels.emplace_back(delta, integral);
  }

  for (std::size_t i = 1; i < out.levels.size(); ++i)
    if (out.levels[i].second < out.levels[i - 1].second - 1e-12) out.monotone = false;

  // Richardson estimate from the tail increments: accept when the last
  // three increments are positive and both consecutive ratios stay < 0.97
  out.extrapolated = std::numeric_limits<double>::infinity();
  if (out.levels.size() >= 4) {
    std::vector<double> inc;
    for (std::size_t i = 1; i < out.levels.size(); ++i)
      inc.push_back(out.levels[i].second - out.levels[i - 1].second);
    const std::size_t k = inc.size();
    const double i0 = inc[k - 3], i1 = inc[k - 2], i2 = inc[k - 1];
    const double scale = std::max(1.0, out.levels.back().second);
    if (std::abs(i2) <= 1e-14 * scale) {
      out.extrapolated = out.levels.back().second; // already saturated
    } else if (i0 > 0.0 && i1 > 0.0 && i2 > 0.0 && i1 / i0 < 0.97 && i2 / i1 < 0.97) {
      const double rho = i2 / i1;
      out.extrapolated = out.levels.back().second + i2 * rho / (1.0 - rho);
    }
  }
  return out;
}

} // namespace torcap
