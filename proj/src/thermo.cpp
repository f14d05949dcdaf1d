#include "margulis/thermo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

namespace margulis {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Deterministic chunked map: out[i] = fn(i), assembled in index order.
template <typename Fn>
void parallel_index_map(std::size_t count, int threads, const Fn& fn) {
  threads = std::min<std::size_t>(resolve_threads(threads), count == 0 ? 1 : count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futs;
  futs.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    futs.push_back(std::async(std::launch::async, [=, &fn]() {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    }));
  }
  for (auto& f : futs) f.get();
}

}  // namespace

std::size_t SpectrumTable::count_below(double t) const {
  // entries sorted by alpha ascending; for negative tables the magnitude
  // order is reversed.
  if (sign >= 0) {
    auto it = std::upper_bound(entries.begin(), entries.end(), t,
                               [](double v, const SpectrumEntry& e) { return v < e.alpha; });
    return static_cast<std::size_t>(it - entries.begin());
  }
  auto it = std::lower_bound(entries.begin(), entries.end(), -t,
                             [](const SpectrumEntry& e, double v) { return e.alpha < v; });
  return entries.size() - static_cast<std::size_t>(it - entries.begin());
}

SpectrumTable build_spectrum(const DeformedRep& rho, int max_len, int threads,
                             const std::vector<Word>* classes) {
  std::vector<Word> own;
  if (!classes) {
    own = enumerate_classes(rho.rank(), max_len);
    classes = &own;
  }
  SpectrumTable table;
  table.rank = rho.rank();
  table.max_len = max_len;
  table.entries.resize(classes->size());

  parallel_index_map(classes->size(), threads, [&](std::size_t i) {
    const Word& w = (*classes)[i];
    SpectrumEntry e;
    e.cls = w;
    e.word_length = static_cast<int>(w.size());
    try {
      e.alpha = margulis_invariant(rho, w);
      e.ell = translation_length(rho.linear().evaluate(w), rho.tol());
    } catch (const Error& err) {
      // carry context of the offending class
      throw Error(err.code(), std::string(err.what()) + " (class " + word_to_string(w) + ")");
    }
    table.entries[i] = std::move(e);
  });

  const double zero_tol = rho.tol().zero_alpha_tol;
  bool has_pos = false, has_neg = false, has_zero = false;
  double min_slope = std::numeric_limits<double>::infinity();
  for (const SpectrumEntry& e : table.entries) {
    if (e.alpha > zero_tol)
      has_pos = true;
    else if (e.alpha < -zero_tol)
      has_neg = true;
    else
      has_zero = true;
    min_slope = std::min(min_slope, std::abs(e.alpha) / e.word_length);
  }
  table.sign = (has_zero || (has_pos && has_neg)) ? 0 : (has_pos ? 1 : -1);
  // The minimum-slope class of full length sits exactly at max_len*min_slope;
  // a hair of relative shrink keeps it robustly outside every counting
  // window, so co-scaled runs count identical sets.
  table.complete_below =
      table.entries.empty() ? 0.0 : max_len * min_slope * (1.0 - 1e-12);

  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) {
                     if (a.alpha != b.alpha) return a.alpha < b.alpha;
                     if (a.word_length != b.word_length) return a.word_length < b.word_length;
                     return a.cls < b.cls;
                   });
  return table;
}

namespace {

struct Regression {
  double slope = 0.0;
  double stderr_ = 0.0;
  double r_squared = 0.0;
};

Regression fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t m = x.size();
  double xbar = std::accumulate(x.begin(), x.end(), 0.0) / m;
  double ybar = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  Regression r;
  r.slope = sxy / sxx;
  double intercept = ybar - r.slope * xbar;
  double ssres = 0.0, sstot = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double e = y[i] - (intercept + r.slope * x[i]);
    ssres += e * e;
    sstot += (y[i] - ybar) * (y[i] - ybar);
  }
  r.r_squared = sstot > 0.0 ? 1.0 - ssres / sstot : 1.0;
  r.stderr_ = m > 2 ? std::sqrt(ssres / (m - 2) / sxx) : 0.0;
  return r;
}

}  // namespace

EntropyEstimate entropy(const SpectrumTable& table, const Tolerances& tol,
                        const EntropyOptions& opts) {
  if (!table.proper())
    raise(errc::insufficient_data,
          "entropy requires a uniformly signed spectrum (properness violated)");
  double cb = table.complete_below;
  if (!(cb > 0.0)) raise(errc::insufficient_data, "complete_below is not positive");

  int min_entries = opts.min_entries > 0 ? opts.min_entries : tol.entropy_min_entries;
  std::size_t below = table.count_below(cb);
  if (below < static_cast<std::size_t>(min_entries)) {
    std::ostringstream os;
    os << "only " << below << " classes below complete_below = " << cb << " (need "
       << min_entries << ")";
    raise(errc::insufficient_data, os.str());
  }

  double lo = opts.window_lo, hi = opts.window_hi;
  if (lo == 0.0 && hi == 0.0) {
    lo = tol.entropy_window_frac * cb;
    hi = cb;
  }
  if (!(lo > 0.0) || !(hi > lo) || hi > cb) {
    std::ostringstream os;
    os << "window [" << lo << ", " << hi << "] must lie inside (0, " << cb << "]";
    raise(errc::insufficient_data, os.str());
  }

  int grid = opts.grid_points > 0 ? opts.grid_points : tol.entropy_grid;
  if (grid < 2) raise(errc::bad_argument, "entropy grid needs at least 2 points");

  EntropyEstimate est;
  est.complete_below = cb;
  est.window_lo = lo;
  est.window_hi = hi;
  std::vector<double> ts(grid), ys(grid);
  for (int j = 0; j < grid; ++j) {
    double t = lo + (hi - lo) * j / (grid - 1);
    std::size_t n = table.count_below(t);
    if (n == 0) {
      std::ostringstream os;
      os << "empty count at threshold " << t << "; shrink the window";
      raise(errc::insufficient_data, os.str());
    }
    ts[j] = t;
    ys[j] = std::log(static_cast<double>(n));
    est.count_curve.emplace_back(t, ys[j]);
  }
  Regression reg = fit_line(ts, ys);
  est.h = reg.slope;
  est.stderr_ = reg.stderr_;
  est.r_squared = reg.r_squared;
  est.entries_used = below;
  if (!(est.h > 0.0)) raise(errc::insufficient_data, "entropy estimate is not positive");
  return est;
}

double intersection(const SpectrumTable& table1, const DeformedRep& rho2, int threads) {
  if (table1.rank != rho2.rank())
    raise(errc::bad_argument, "intersection requires matching ranks");
  double t_cut = table1.complete_below;
  std::size_t n = table1.count_below(t_cut);
  if (n == 0) raise(errc::insufficient_data, "no classes below complete_below");

  // R_T indices: the first n entries in magnitude order.
  std::vector<std::size_t> idx(n);
  if (table1.sign >= 0)
    std::iota(idx.begin(), idx.end(), 0);
  else
    std::iota(idx.begin(), idx.end(), table1.entries.size() - n);

  std::vector<double> ratio(n);
  parallel_index_map(n, threads, [&](std::size_t k) {
    const SpectrumEntry& e = table1.entries[idx[k]];
    if (e.alpha <= 0.0)
      raise(errc::sign_mismatch,
            "non-positive alpha below threshold (class " + word_to_string(e.cls) + ")");
    ratio[k] = margulis_invariant(rho2, e.cls) / e.alpha;
  });
  double sum = std::accumulate(ratio.begin(), ratio.end(), 0.0);
  return sum / static_cast<double>(n);
}

JResult j_functional(const DeformedRep& rho1, const DeformedRep& rho2, int max_len,
                     const Tolerances& tol, int threads) {
  std::vector<Word> classes = enumerate_classes(rho1.rank(), max_len);
  SpectrumTable t1 = build_spectrum(rho1, max_len, threads, &classes);
  SpectrumTable t2 = build_spectrum(rho2, max_len, threads, &classes);
  JResult r;
  r.intersection_value = intersection(t1, rho2, threads);
  r.h1 = entropy(t1, tol).h;
  r.h2 = entropy(t2, tol).h;
  r.j = r.intersection_value * (r.h2 / r.h1);
  return r;
}

PressureContext::PressureContext(const DeformedRep& rho, int max_len,
                                 const Tolerances& tol, int threads)
    : rho_(rho), max_len_(max_len), tol_(tol), threads_(threads) {
  classes_ = enumerate_classes(rho.rank(), max_len);
  SpectrumTable table = build_spectrum(rho_, max_len, threads, &classes_);
  if (table.sign != 1)
    raise(errc::sign_mismatch, "pressure context requires a positive spectrum");
  base_h_ = entropy(table, tol).h;

  base_alpha_ = alphas_for(rho_);
  base_cb_ = table.complete_below;
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (base_alpha_[i] <= base_cb_) base_window_.push_back(i);
  if (base_window_.empty()) raise(errc::insufficient_data, "empty completeness window");
  series_c_ = 0.0;
  for (std::size_t i : base_window_)
    series_c_ += std::exp(-base_h_ * base_alpha_[i]);
}

std::vector<double> PressureContext::alphas_for(const DeformedRep& r) const {
  std::vector<double> a(classes_.size());
  parallel_index_map(classes_.size(), threads_, [&](std::size_t i) {
    a[i] = margulis_invariant(r, classes_[i]);
  });
  return a;
}

// Root of sum_W exp(-s alpha_i) = C. The function is strictly decreasing and
// convex in s, so Newton from a warm start converges monotonically; the
// stopping rule is deterministic.
double PressureContext::series_root(const std::vector<double>& alphas,
                                    double guess) const {
  double s = guess;
  for (int it = 0; it < 80; ++it) {
    double f = -series_c_, df = 0.0;
    for (std::size_t i : base_window_) {
      double e = std::exp(-s * alphas[i]);
      f += e;
      df -= alphas[i] * e;
    }
    double step = f / df;
    s -= step;
    if (!(s > 0.0) || !std::isfinite(s))
      raise(errc::insufficient_data, "series entropy root escaped (0, inf)");
    if (std::abs(step) <= 1e-15 * s) break;
  }
  return s;
}

double PressureContext::j_smooth(const TangentVector& v, double t) const {
  if (t == 0.0) return 1.0;
  DeformedRep rt = path_point(rho_, v, t);
  std::vector<double> at = alphas_for(rt);
  double isum = 0.0;
  for (std::size_t i : base_window_) isum += at[i] / base_alpha_[i];
  double inter = isum / static_cast<double>(base_window_.size());
  if (!(inter > 0.0))
    raise(errc::sign_mismatch, "intersection factor lost positivity along the path");
  double root = series_root(at, base_h_ / inter);
  return inter * (root / base_h_);
}

namespace {

double second_difference(const std::array<double, 5>& f, double h) {
  return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
}

}  // namespace

PressureResult PressureContext::second_derivative(const TangentVector& v,
                                                  double step) const {
  auto sample = [&](double h) {
    std::array<double, 5> f{j_smooth(v, -2.0 * h), j_smooth(v, -h), 1.0,
                            j_smooth(v, h), j_smooth(v, 2.0 * h)};
    return second_difference(f, h);
  };
  PressureResult r;
  r.value = sample(step);
  r.value_half_step = sample(0.5 * step);
  double scale = std::max({std::abs(r.value), std::abs(r.value_half_step),
                           tol_.pressure_zero_tol});
  r.rel_change = std::abs(r.value - r.value_half_step) / scale;
  if (r.rel_change > tol_.richardson_max &&
      std::max(std::abs(r.value), std::abs(r.value_half_step)) > tol_.pressure_zero_tol) {
    std::ostringstream os;
    os << "step and step/2 estimates disagree by " << r.rel_change * 100.0 << "%";
    raise(errc::step_too_small, os.str());
  }
  return r;
}

double pressure_form(const PressureContext& ctx, const TangentVector& v,
                     const TangentVector& w, double step) {
  if (&v == &w) return ctx.second_derivative(v, step).value;
  return 0.25 * (ctx.second_derivative(v + w, step).value -
                 ctx.second_derivative(v - w, step).value);
}

std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& gram) {
  std::size_t n = gram.size();
  std::vector<std::vector<double>> a = gram;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace margulis
