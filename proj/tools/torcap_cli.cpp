// torcap: multi-parametric logarithmic capacity and multiple Fourier series
// summation experiments on the discrete torus.
//
// One command per process; given identical flags and seed, every artifact is
// byte-identical across reruns. Exit codes: 0 success, 2 spec/parse error,
// 3 solver non-convergence (artifact still written).

#include <CLI11.hpp>

#include "torcap/capacity.hpp"
#include "torcap/construct.hpp"
#include "torcap/kernels.hpp"
#include "torcap/rng.hpp"
#include "torcap/serialize.hpp"
#include "torcap/series.hpp"
#include "torcap/setspec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace torcap;

struct CommonOpts {
  std::size_t n = 1;
  std::size_t m = 512;
  std::string set_spec;
  std::string coeffs_path;
  std::vector<std::string> theta_args;
  std::vector<std::size_t> nmax;
  std::size_t depth = 8;
  double tol = 1e-3;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  std::size_t threads = std::thread::hardware_concurrency();
  std::size_t J = 4;
  double c_const = 10.0;
  double budget = 2.0;
  std::vector<std::size_t> shape;
  double decay = 1.6;
  std::size_t d = 1;
  std::vector<double> radii;
  std::vector<double> h_widths;
};

std::vector<double> parse_theta(const std::string& arg, std::size_t n) {
  std::vector<double> point;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) point.push_back(std::stod(tok));
  if (point.size() != n)
    throw std::invalid_argument("--theta: expected " + std::to_string(n) +
                                " comma-separated radians, got '" + arg + "'");
  return point;
}

std::string load_set_text(const std::string& arg) {
  if (arg.empty()) throw std::invalid_argument("--set: missing set specification");
  if (arg.front() == '{' || arg.front() == '[') return arg;
  return read_file(arg);
}

void emit(const CommonOpts& o, const std::string& content) {
  if (o.out_path.empty()) return;
  write_file(o.out_path, content);
}

std::vector<std::string> theta_columns(std::size_t n) {
  std::vector<std::string> cols;
  for (std::size_t ax = 0; ax < n; ++ax) cols.push_back("theta" + std::to_string(ax));
  return cols;
}

CoeffArray load_coeffs(const CommonOpts& o) {
  if (o.coeffs_path.empty()) throw std::invalid_argument("--coeffs: input file required");
  return coeff_array_from_json(read_file(o.coeffs_path));
}

// Runs fn(i) for i < count on up to `threads` workers. Each index owns its
// output slot, so the artifact bytes do not depend on the thread count.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

int run_capacity(const CommonOpts& o, bool with_measure) {
  TorusGrid grid(o.n, o.m);
  GridSet E = parse_set_spec(grid, load_set_text(o.set_spec));
  EquilibriumOptions opts;
  opts.tol = o.tol;
  EquilibriumResult r = equilibrium(E, opts);

  if (!with_measure) {
    emit(o, equilibrium_result_to_json(r) + "\n");
  } else {
    std::vector<std::size_t> idx;
    std::vector<double> wts;
    for (std::size_t i = 0; i < r.measure.weights.size(); ++i)
      if (r.measure.weights[i] > 0.0) {
        idx.push_back(i);
        wts.push_back(r.measure.weights[i]);
      }
    JsonWriter w;
    w.raw("result", equilibrium_result_to_json(r));
    w.raw("support_indices", json_int_array(idx));
    w.raw("support_weights", json_num_array(wts));
    emit(o, w.finish() + "\n");
  }
  std::printf("capacity=%.6g mass=%.6g iterations=%zu converged=%s\n", r.capacity, r.mass,
              r.iterations, r.converged ? "true" : "false");
  return r.converged ? 0 : 3;
}

int run_sum_scan(const CommonOpts& o) {
  CoeffArray f = load_coeffs(o);
  if (o.theta_args.empty()) throw std::invalid_argument("--theta: at least one point required");
  std::vector<std::size_t> nmax = o.nmax;
  if (nmax.empty())
    for (auto s : f.shape) nmax.push_back(s - 1);
  if (nmax.size() == 1 && f.n > 1) nmax.assign(f.n, nmax[0]);

  // parse up front: worker threads must not throw
  std::vector<std::vector<double>> points;
  for (const auto& arg : o.theta_args) points.push_back(parse_theta(arg, f.n));
  for (std::size_t ax = 0; ax < f.n; ++ax)
    if (nmax[ax] >= f.shape[ax])
      throw std::invalid_argument("--nmax: exceeds the stored coefficient shape");

  std::vector<SummationScan> scans(points.size());
  parallel_for(points.size(), o.threads, [&](std::size_t i) {
    scans[i] = pringsheim_scan(f, points[i], nmax, o.tol);
  });

  if (o.format == "csv") {
    auto cols = theta_columns(f.n);
    for (std::size_t ax = 0; ax < f.n; ++ax) cols.push_back("nmax" + std::to_string(ax));
    cols.insert(cols.end(), {"sup_norm", "oscillation_tail", "verdict"});
    for (std::size_t c = 0; c < f.d; ++c) {
      cols.push_back("final_re_" + std::to_string(c));
      cols.push_back("final_im_" + std::to_string(c));
    }
    CsvWriter csv(cols);
    for (const auto& s : scans) {
      std::vector<std::string> row;
      for (double t : s.theta) row.push_back(format_csv_double(t));
      for (auto nm : s.n_max) row.push_back(std::to_string(nm));
      row.push_back(format_csv_double(s.sup_norm));
      row.push_back(format_csv_double(s.oscillation_tail));
      row.push_back(to_string(s.verdict));
      for (const cplx& v : s.final_value) {
        row.push_back(format_csv_double(v.real()));
        row.push_back(format_csv_double(v.imag()));
      }
      csv.row(row);
    }
    emit(o, csv.text());
  } else {
    std::string rows = "[";
    for (std::size_t i = 0; i < scans.size(); ++i) {
      const auto& s = scans[i];
      if (i) rows += ",";
      JsonWriter w;
      w.raw("theta", json_num_array(s.theta));
      w.raw("nmax", json_int_array(s.n_max));
      w.num("sup_norm", s.sup_norm);
      w.num("oscillation_tail", s.oscillation_tail);
      w.str("verdict", to_string(s.verdict));
      std::vector<double> fin;
      for (const cplx& v : s.final_value) {
        fin.push_back(v.real());
        fin.push_back(v.imag());
      }
      w.raw("final_value", json_num_array(fin));
      w.raw("shell_sups", json_num_array({s.shell_sup[0], s.shell_sup[1], s.shell_sup[2]}));
      rows += w.finish();
    }
    rows += "]";
    JsonWriter top;
    top.raw("scans", rows);
    emit(o, top.finish() + "\n");
  }
  std::printf("%s sup_norm=%.6g oscillation_tail=%.3g\n", to_string(scans[0].verdict).c_str(),
              scans[0].sup_norm, scans[0].oscillation_tail);
  return 0;
}

int run_abel_trace(const CommonOpts& o) {
  CoeffArray f = load_coeffs(o);
  if (o.theta_args.size() != 1)
    throw std::invalid_argument("--theta: exactly one point for abel-trace");
  std::vector<double> theta = parse_theta(o.theta_args[0], f.n);
  std::vector<double> radii = o.radii;
  if (radii.empty()) radii = {0.5, 0.9, 0.99, 0.999, 0.9999};
  auto values = radial_trace(f, theta, radii);

  if (o.format == "csv") {
    auto cols = theta_columns(f.n);
    cols.push_back("t");
    for (std::size_t c = 0; c < f.d; ++c) {
      cols.push_back("re_" + std::to_string(c));
      cols.push_back("im_" + std::to_string(c));
    }
    CsvWriter csv(cols);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      std::vector<std::string> row;
      for (double t : theta) row.push_back(format_csv_double(t));
      row.push_back(format_csv_double(radii[i]));
      for (const cplx& v : values[i]) {
        row.push_back(format_csv_double(v.real()));
        row.push_back(format_csv_double(v.imag()));
      }
      csv.row(row);
    }
    emit(o, csv.text());
  } else {
    std::string rows = "[";
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (i) rows += ",";
      std::vector<double> flat;
      for (const cplx& v : values[i]) {
        flat.push_back(v.real());
        flat.push_back(v.imag());
      }
      JsonWriter w;
      w.num("t", radii[i]);
      w.raw("value", json_num_array(flat));
      rows += w.finish();
    }
    rows += "]";
    JsonWriter top;
    top.raw("theta", json_num_array(theta));
    top.raw("trace", rows);
    top.num("truncation_bound",
            abel_truncation_bound(f, std::vector<double>(f.n, radii.back())));
    emit(o, top.finish() + "\n");
  }
  std::printf("trace at t=%.6g: re=%.6g\n", radii.back(), values.back()[0].real());
  return 0;
}

int run_strong_diff(const CommonOpts& o) {
  CoeffArray f = load_coeffs(o);
  if (o.theta_args.size() != 1)
    throw std::invalid_argument("--theta: exactly one point for strong-diff");
  std::vector<double> theta = parse_theta(o.theta_args[0], f.n);
  std::vector<double> h = o.h_widths;
  if (h.size() == 1 && f.n > 1) h.assign(f.n, h[0]);
  if (h.size() != f.n)
    throw std::invalid_argument("--window: expected one half-width per dimension");
  auto v = strong_diff_mean(f, h, theta);

  if (o.format == "csv") {
    auto cols = theta_columns(f.n);
    for (std::size_t ax = 0; ax < f.n; ++ax) cols.push_back("h" + std::to_string(ax));
    for (std::size_t c = 0; c < f.d; ++c) {
      cols.push_back("re_" + std::to_string(c));
      cols.push_back("im_" + std::to_string(c));
    }
    CsvWriter csv(cols);
    std::vector<std::string> row;
    for (double t : theta) row.push_back(format_csv_double(t));
    for (double x : h) row.push_back(format_csv_double(x));
    for (const cplx& z : v) {
      row.push_back(format_csv_double(z.real()));
      row.push_back(format_csv_double(z.imag()));
    }
    csv.row(row);
    emit(o, csv.text());
  } else {
    std::vector<double> flat;
    for (const cplx& z : v) {
      flat.push_back(z.real());
      flat.push_back(z.imag());
    }
    JsonWriter w;
    w.raw("theta", json_num_array(theta));
    w.raw("h", json_num_array(h));
    w.raw("value", json_num_array(flat));
    emit(o, w.finish() + "\n");
  }
  std::printf("strong-diff mean: re=%.6g im=%.6g\n", v[0].real(), v[0].imag());
  return 0;
}

int run_variation(const CommonOpts& o) {
  CoeffArray f = load_coeffs(o);
  if (o.theta_args.empty()) throw std::invalid_argument("--theta: at least one point required");
  std::vector<std::vector<double>> points;
  for (const auto& arg : o.theta_args) points.push_back(parse_theta(arg, f.n));
  if (o.depth == 0 || o.depth > 12)
    throw std::invalid_argument("--depth: must lie in 1..12");

  std::vector<RadialVariationResult> results(points.size());
  parallel_for(points.size(), o.threads, [&](std::size_t i) {
    results[i] = radial_variation(f, points[i], o.depth);
  });

  if (o.format == "csv") {
    auto cols = theta_columns(f.n);
    cols.insert(cols.end(), {"level", "delta", "value", "extrapolated", "monotone"});
    CsvWriter csv(cols);
    for (const auto& r : results) {
      for (std::size_t k = 0; k < r.levels.size(); ++k) {
        std::vector<std::string> row;
        for (double t : r.theta) row.push_back(format_csv_double(t));
        row.push_back(std::to_string(k + 1));
        row.push_back(format_csv_double(r.levels[k].first));
        row.push_back(format_csv_double(r.levels[k].second));
        row.push_back(std::isinf(r.extrapolated) ? "inf" : format_csv_double(r.extrapolated));
        row.push_back(r.monotone ? "true" : "false");
        csv.row(row);
      }
    }
    emit(o, csv.text());
  } else {
    std::string arr = "[";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      if (i) arr += ",";
      std::string levels = "[";
      for (std::size_t k = 0; k < r.levels.size(); ++k) {
        if (k) levels += ",";
        levels += "[" + format_json_double(r.levels[k].first) + "," +
                  format_json_double(r.levels[k].second) + "]";
      }
      levels += "]";
      JsonWriter w;
      w.raw("theta", json_num_array(r.theta));
      w.raw("levels", levels);
      if (std::isinf(r.extrapolated))
        w.str("extrapolated", "inf");
      else
        w.num("extrapolated", r.extrapolated);
      w.boolean("monotone", r.monotone);
      arr += w.finish();
    }
    arr += "]";
    JsonWriter top;
    top.raw("variation", arr);
    emit(o, top.finish() + "\n");
  }
  const auto& r0 = results[0];
  std::printf("variation: last=%.6g extrapolated=%s monotone=%s\n", r0.levels.back().second,
              std::isinf(r0.extrapolated) ? "inf" : format_csv_double(r0.extrapolated).c_str(),
              r0.monotone ? "true" : "false");
  return 0;
}

int run_construct_divergent(const CommonOpts& o) {
  TorusGrid grid(o.n, o.m);
  GridSet E = parse_set_spec(grid, load_set_text(o.set_spec));
  EquilibriumOptions opts;
  opts.tol = o.tol;
  auto [c_low, c_high] = verify_recomp(o.c_const, grid);
  if (c_low <= 0.0)
    throw std::invalid_argument("--c-const: rejected by verify_recomp (c_low <= 0)");
  NestedCompacts chain = nested_compacts(E, o.J, o.budget, opts);
  if (chain.sets.empty())
    throw std::invalid_argument("--budget: unattainable at every level for this set");
  std::vector<std::size_t> shape = o.shape;
  if (shape.empty()) shape.assign(grid.n, grid.m / 2 + 1);
  if (shape.size() == 1 && grid.n > 1) shape.assign(grid.n, shape[0]);
  LogKernelFunction f = divergent_function(chain, chain.sets.size(), o.c_const, shape);

  std::map<std::string, std::string> meta;
  meta["dirichlet_norm_sq"] = format_json_double(f.coeffs.dirichlet_norm_sq());
  emit(o, coeff_array_to_json(f.coeffs, meta) + "\n");
  if (!o.out_path.empty()) {
    JsonWriter side;
    side.integer("J", static_cast<long long>(chain.sets.size()));
    side.num("C_const", o.c_const);
    side.raw("capacities", json_num_array(chain.capacities));
    side.num("sqrt_cap_sum", chain.sqrt_cap_sum);
    side.boolean("shortfall", chain.shortfall);
    side.num("recomp_c_low", c_low);
    side.num("recomp_c_high", c_high);
    write_file(o.out_path + ".sidecar.json", side.finish() + "\n");
  }
  std::printf("construct: J=%zu dirichlet_norm=%.6g sqrt_cap_sum=%.6g shortfall=%s\n",
              chain.sets.size(), f.coeffs.dirichlet_norm(), chain.sqrt_cap_sum,
              chain.shortfall ? "true" : "false");
  bool all_conv = true;
  for (const auto& eqr : chain.equilibria) all_conv = all_conv && eqr.converged;
  return all_conv ? 0 : 3;
}

int run_demo_localization(const CommonOpts& o) {
  LocalizationReport rep = localization_demo(o.m);
  if (o.format == "csv") {
    CsvWriter csv({"r1", "r2", "value"});
    for (std::size_t i = 0; i < rep.r_grid.size(); ++i)
      for (std::size_t j = 0; j < rep.r_grid.size(); ++j)
        csv.row({format_csv_double(rep.r_grid[i]), format_csv_double(rep.r_grid[j]),
                 format_csv_double(rep.trace[i][j])});
    emit(o, csv.text());
  } else {
    std::string tr = "[";
    for (std::size_t i = 0; i < rep.trace.size(); ++i) {
      if (i) tr += ",";
      tr += json_num_array(rep.trace[i]);
    }
    tr += "]";
    JsonWriter w;
    w.raw("r_grid", json_num_array(rep.r_grid));
    w.raw("trace", tr);
    w.num("strip_max_abs", rep.strip_max_abs);
    w.num("oscillation", rep.oscillation);
    w.num("f2_abel_at_0999", rep.f2_abel_at_0999);
    w.raw("f1_poisson", json_num_array(rep.f1_poisson));
    emit(o, w.finish() + "\n");
  }
  std::printf("localization: strip_max=%.3g oscillation=%.6g\n", rep.strip_max_abs,
              rep.oscillation);
  return 0;
}

int run_verify_kernels(const CommonOpts& o) {
  const std::size_t K = o.m / 2;
  KernelTable t = sample_h(o.m);
  const double dev = verify_b_conv_h(o.m, K);
  const double dev_shared = verify_b_conv_h_shared(o.m, K);
  auto eigs = t.h_eigenvalues();
  double eig_min = eigs[0], h_min = t.h_samples[0], mean = 0.0;
  for (double e : eigs) eig_min = std::min(eig_min, e);
  for (double h : t.h_samples) {
    h_min = std::min(h_min, h);
    mean += h;
  }
  mean /= static_cast<double>(o.m);
  TildeKernelTable tt = tilde_h_series(o.m, std::max<std::size_t>(K, 16));

  JsonWriter w;
  w.integer("m", static_cast<long long>(o.m));
  w.integer("K", static_cast<long long>(K));
  w.num("h_diag", t.h_diag);
  w.num("h_min", h_min);
  w.num("mean_h", mean);
  w.num("dft_min", eig_min);
  w.num("autoconv_deviation", dev);
  w.num("autoconv_deviation_shared", dev_shared);
  w.num("tilde_h_certified_min", tt.certified_h_min());
  emit(o, w.finish() + "\n");
  std::printf("kernels m=%zu: mean_h=%.12g dft_min=%.6g autoconv_dev=%.6g\n", o.m, mean,
              eig_min, dev);
  return 0;
}

int run_gen_coeffs(const CommonOpts& o) {
  if (o.decay <= 1.5)
    throw std::invalid_argument(
        "--decay: must exceed 1.5 (the profile prod (alpha_j+1)^{-decay} needs "
        "decay > 1.5 for a finite Dirichlet norm as the shape grows)");
  if (o.shape.empty()) throw std::invalid_argument("--shape: required for gen-coeffs");
  std::vector<std::size_t> shape = o.shape;
  const std::size_t n = shape.size();
  CoeffArray f(n, shape, o.d);
  SplitMix64 rng(o.seed);
  const std::size_t count = f.flat_count();
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    double mag = 1.0;
    for (std::size_t ax = n; ax-- > 0;) {
      mag *= std::pow(static_cast<double>(rem % shape[ax]) + 1.0, -o.decay);
      rem /= shape[ax];
    }
    // random phases, magnitude split evenly across the d components
    const double comp = mag / std::sqrt(static_cast<double>(o.d));
    for (std::size_t c = 0; c < o.d; ++c) {
      const double phase = 2.0 * std::numbers::pi * rng.next_double();
      f.values[flat * o.d + c] = std::polar(comp, phase);
    }
  }
  std::map<std::string, std::string> meta;
  meta["seed"] = std::to_string(o.seed);
  meta["decay"] = format_json_double(o.decay);
  meta["dirichlet_norm_sq"] = format_json_double(f.dirichlet_norm_sq());
  emit(o, coeff_array_to_json(f, meta) + "\n");
  std::printf("gen-coeffs: shape0=%zu dirichlet_norm=%.10g\n", shape[0], f.dirichlet_norm());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-parametric logarithmic capacity and rectangular summation toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "torus dimension (1..3)");
    cmd->add_option("--m", o.m, "grid points per dimension (power of two >= 8)");
    cmd->add_option("--tol", o.tol, "solver / verdict tolerance");
    cmd->add_option("--seed", o.seed, "seed for randomized inputs");
    cmd->add_option("--format", o.format, "artifact format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out_path, "artifact output path");
    cmd->add_option("--threads", o.threads, "worker thread cap");
  };

  auto* cap = app.add_subcommand("capacity", "capacity of a grid set (dual formulation)");
  add_common(cap);
  cap->add_option("--set", o.set_spec, "set spec: inline JSON or a file path")->required();

  auto* eq = app.add_subcommand("equilibrium", "equilibrium measure of a grid set");
  add_common(eq);
  eq->add_option("--set", o.set_spec, "set spec: inline JSON or a file path")->required();

  auto* scan = app.add_subcommand("sum-scan", "Pringsheim rectangular partial-sum scan");
  add_common(scan);
  scan->add_option("--coeffs", o.coeffs_path, "CoeffArray JSON file")->required();
  scan->add_option("--theta", o.theta_args, "sample point(s), comma-separated radians")
      ->required();
  scan->add_option("--nmax", o.nmax, "rectangle cap per dimension");

  auto* abel = app.add_subcommand("abel-trace", "Abel means along the diagonal radius");
  add_common(abel);
  abel->add_option("--coeffs", o.coeffs_path, "CoeffArray JSON file")->required();
  abel->add_option("--theta", o.theta_args, "sample point, comma-separated radians")
      ->required();
  abel->add_option("--radii", o.radii, "diagonal radii in [0,1)");

  auto* sdiff = app.add_subcommand("strong-diff", "sinc-multiplier box average F_h");
  add_common(sdiff);
  sdiff->add_option("--coeffs", o.coeffs_path, "CoeffArray JSON file")->required();
  sdiff->add_option("--theta", o.theta_args, "sample point")->required();
  sdiff->add_option("--window", o.h_widths, "window half-widths h_j, one per dimension")->required();

  auto* var = app.add_subcommand("variation", "radial variation with Richardson estimate");
  add_common(var);
  var->add_option("--coeffs", o.coeffs_path, "CoeffArray JSON file")->required();
  var->add_option("--theta", o.theta_args, "sample point(s)")->required();
  var->add_option("--depth", o.depth, "number of dyadic levels (<= 12)");

  auto* cons = app.add_subcommand("construct-divergent",
                                  "log-kernel function diverging on a zero-capacity target");
  add_common(cons);
  cons->add_option("--set", o.set_spec, "target set E (spec JSON or path)")->required();
  cons->add_option("--J", o.J, "chain length (<= 8)");
  cons->add_option("--budget", o.budget, "sqrt-capacity budget");
  cons->add_option("--c-const", o.c_const, "construction constant C");
  cons->add_option("--shape", o.shape, "output coefficient shape per dimension");

  auto* demo = app.add_subcommand("demo-localization",
                                  "bi-Poisson localization failure demonstration");
  add_common(demo);

  auto* verk = app.add_subcommand("verify-kernels", "kernel identities and positivity report");
  add_common(verk);

  auto* gen = app.add_subcommand("gen-coeffs", "seeded random CoeffArray factory");
  add_common(gen);
  gen->add_option("--shape", o.shape, "coefficient shape per dimension")->required();
  gen->add_option("--decay", o.decay, "magnitude decay exponent (> 1.5)");
  gen->add_option("--d", o.d, "coefficient space dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // flag/spec parse failures share the spec-error exit code
  }

  try {
    if (app.got_subcommand(cap)) return run_capacity(o, false);
    if (app.got_subcommand(eq)) return run_capacity(o, true);
    if (app.got_subcommand(scan)) return run_sum_scan(o);
    if (app.got_subcommand(abel)) return run_abel_trace(o);
    if (app.got_subcommand(sdiff)) return run_strong_diff(o);
    if (app.got_subcommand(var)) return run_variation(o);
    if (app.got_subcommand(cons)) return run_construct_divergent(o);
    if (app.got_subcommand(demo)) return run_demo_localization(o);
    if (app.got_subcommand(verk)) return run_verify_kernels(o);
    if (app.got_subcommand(gen)) return run_gen_coeffs(o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
