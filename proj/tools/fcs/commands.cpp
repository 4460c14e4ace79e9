#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace fcs::cli {
namespace {

Cell ll(int v) { return static_cast<long long>(v); }

void add_params(Table& t, const ScatterParams& p) {
  t.add_meta("gamma", p.gamma());
  t.add_meta("delta", p.delta());
}

void add_moments(Table& t, const MomentReport& m) {
  t.add_meta("mean", m.mean);
  t.add_meta("variance", m.variance);
  t.add_meta("fano_defined", std::string(m.fano_defined ? "true" : "false"));
  t.add_meta("fano", m.fano);
  t.add_meta("mandel_q", m.mandel_q);
  for (int k = 0; k < 4; ++k) t.add_meta("kappa_" + std::to_string(k + 1), m.cumulants[static_cast<std::size_t>(k)]);
}

const char* channel_flag(Channel c) { return c == Channel::Backward ? "l" : "r"; }

}  // namespace

int reentrant_peak(const std::vector<double>& probs, double nbar) {
  const int n_max = static_cast<int>(probs.size()) - 1;
  for (int n = 1; n < n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (n > nbar && probs[i] > 1e-12 && probs[i] > probs[i - 1] && probs[i] >= probs[i + 1]) return n;
  }
  return -1;
}

Table cmd_dist(const ScatterParams& params, double nbar, Channel channel, Truncation n_max) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("--nbar: must be >= 0");
  const int nm = n_max.value_or(auto_n_max(nbar));
  const CoeffTable table = coeff_table(params, nm);
  const CountDistribution dist = channel_distribution(table, nbar, channel, nm);

  Table t;
  t.command = "dist";
  add_params(t, params);
  t.add_meta("nbar", nbar);
  t.add_meta("channel", std::string(channel_flag(channel)));
  t.add_meta("n_max", ll(nm));
  t.add_meta("zero_bucket_mass", dist.zero_bucket_mass);
  t.add_meta("norm_defect", dist.norm_defect);
  t.add_meta("truncation_bound", dist.truncation_bound);
  t.add_meta("probability_error_bound", dist.probability_error_bound);
  t.add_meta("conditioning_warnings", static_cast<long long>(table.warnings().size()));
  add_moments(t, moments(dist));
  t.columns = {"n", "p_raw", "p_normalized", "s_abs2"};
  t.probability_columns = {"p_raw", "p_normalized"};
  for (int n = 0; n <= nm; ++n) {
    const auto i = static_cast<std::size_t>(n);
    t.rows.push_back({ll(n), dist.raw[i], dist.probs[i], dist.weight[i]});
  }
  return t;
}

Table cmd_joint(const ScatterParams& params, double nbar, Truncation n_max) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("--nbar: must be >= 0");
  const JointDistribution joint = joint_distribution(params, nbar, n_max);
  Table t;
  t.command = "joint";
  add_params(t, params);
  t.add_meta("nbar", nbar);
  t.add_meta("n_max", ll(joint.n_max()));
  t.add_meta("total_mass", joint.total_mass());
  t.add_meta("min_cell", joint.min_cell());
  t.columns = {"n", "m", "q"};
  for (int n = 0; n <= joint.n_max(); ++n) {
    for (int m = 0; m <= joint.n_max(); ++m) t.rows.push_back({ll(n), ll(m), joint(n, m)});
  }
  return t;
}

Table cmd_coeffs(const ScatterParams& params, int n_max, CoeffRoute route) {
  if (n_max < 0) throw std::invalid_argument("--nmax: must be >= 0");
  const CoeffTable table =
      route == CoeffRoute::JetOracle ? oracle_table(params, n_max) : coeff_table(params, n_max);
  Table t;
  t.command = "coeffs";
  add_params(t, params);
  t.add_meta("n_max", ll(n_max));
  t.add_meta("route", std::string(to_string(table.route())));
  t.add_meta("branch", std::string(to_string(table.branch())));
  t.add_meta("conditioning_warnings", static_cast<long long>(table.warnings().size()));
  if (params.gamma() != 0.0 || params.delta() != 0.0) {
    const auto amp = continuum_amplitudes(params);
    t.add_meta("t_re", amp.t.real());
    t.add_meta("t_im", amp.t.imag());
    t.add_meta("r_re", amp.r.real());
    t.add_meta("r_im", amp.r.imag());
    t.add_meta("T", amp.T);
    t.add_meta("R", amp.R);
  }
  t.columns = {"n", "m", "re", "im", "abs", "error_bound"};
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; n + m <= n_max; ++m) {
      const Complex s = table(n, m);
      t.rows.push_back({ll(n), ll(m), s.real(), s.imag(), std::abs(s), table.error_bound(n, m)});
    }
  }
  return t;
}

Table cmd_continuum(const InitialState& state, const std::string& state_spec, double T,
                    Channel channel, std::optional<int> n_max) {
  validate(state);
  int nm = 0;
  if (n_max) {
    nm = *n_max;
  } else if (const auto* c = std::get_if<CoherentState>(&state)) {
    nm = auto_n_max(c->nbar);
  } else if (const auto* f = std::get_if<FockState>(&state)) {
    nm = f->n;
  } else {
    nm = std::min(static_cast<int>(make_custom(state).amplitudes().size()) - 1, 2000);
  }
  if (nm < 0) throw std::invalid_argument("--nmax: must be >= 0");

  Table t;
  t.command = "continuum";
  t.add_meta("state", state_spec);
  t.add_meta("T", T);
  t.add_meta("R", 1.0 - T);
  t.add_meta("channel", std::string(channel_flag(channel)));
  t.add_meta("n_max", ll(nm));

  if (const auto* sq = std::get_if<SqueezedState>(&state)) {
    const double t_eff = channel == Channel::Forward ? T : 1.0 - T;
    const SqueezedComparison cmp = squeezed_distribution(sq->magnitude, sq->theta, t_eff, nm);
    t.add_meta("norm_defect", cmp.general.norm_defect);
    t.add_meta("truncation_bound", cmp.general.truncation_bound);
    t.add_meta("zeta_prime", cmp.zeta_prime);
    t.add_meta("d_zeta", cmp.d_zeta);
    t.add_meta("max_discrepancy", cmp.max_discrepancy);
    add_moments(t, moments(cmp.general));
    t.columns = {"n", "p", "p_raw", "p_closed_form", "discrepancy"};
    t.probability_columns = {"p", "p_raw", "p_closed_form"};
    for (int n = 0; n <= nm; ++n) {
      const auto i = static_cast<std::size_t>(n);
      t.rows.push_back({ll(n), cmp.general.probs[i], cmp.general.raw[i], cmp.closed_form.probs[i],
                        cmp.discrepancy[i]});
    }
    return t;
  }

  const CountDistribution dist = continuum_distribution(state, T, channel, nm);
  t.add_meta("norm_defect", dist.norm_defect);
  t.add_meta("truncation_bound", dist.truncation_bound);
  add_moments(t, moments(dist));
  t.columns = {"n", "p", "p_raw"};
  t.probability_columns = {"p", "p_raw"};
  for (int n = 0; n <= nm; ++n) {
    const auto i = static_cast<std::size_t>(n);
    t.rows.push_back({ll(n), dist.probs[i], dist.raw[i]});
  }
  return t;
}

Table cmd_gf(const ScatterParams& params, double nbar, double lambda_r, double lambda_l,
             Truncation n_max) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("--nbar: must be >= 0");
  const GeneratingFunction F(params, nbar, n_max);
  const Complex v = F(lambda_r, lambda_l);
  Table t;
  t.command = "gf";
  add_params(t, params);
  t.add_meta("nbar", nbar);
  t.add_meta("n_max", ll(F.n_max()));
  t.columns = {"lambda_r", "lambda_l", "re", "im"};
  t.rows.push_back({lambda_r, lambda_l, v.real(), v.imag()});
  return t;
}

Table cmd_gf_real(const ScatterParams& params, double nbar, double z_r, double z_l,
                  Truncation n_max) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("--nbar: must be >= 0");
  const GeneratingFunction F(params, nbar, n_max);
  Table t;
  t.command = "gf";
  add_params(t, params);
  t.add_meta("nbar", nbar);
  t.add_meta("n_max", ll(F.n_max()));
  t.columns = {"z_r", "z_l", "value"};
  t.rows.push_back({z_r, z_l, F.at_real_z(z_r, z_l)});
  return t;
}

Table cmd_gf_continuum(const InitialState& state, const std::string& state_spec, double T,
                       double lambda_r, double lambda_l) {
  const Complex v = continuum_F(state, T, lambda_r, lambda_l);
  Table t;
  t.command = "gf";
  t.add_meta("state", state_spec);
  t.add_meta("T", T);
  t.add_meta("R", 1.0 - T);
  t.columns = {"lambda_r", "lambda_l", "re", "im"};
  t.rows.push_back({lambda_r, lambda_l, v.real(), v.imag()});
  return t;
}

Table cmd_kernel(const ScatterParams& params, Complex w) {
  Table t;
  t.command = "kernel";
  add_params(t, params);
  t.add_meta("w_re", w.real());
  t.add_meta("w_im", w.imag());
  t.columns = {"route", "re", "im"};
  std::vector<KernelValue> values{kernel_d_tilde(params, w), kernel_root_form(params, w)};
  if (params.rho() != Complex{0.0, 0.0}) values.push_back(kernel_series(params, w));
  for (const auto& kv : values) {
    t.rows.push_back({std::string(to_string(kv.route)), kv.value.real(), kv.value.imag()});
  }
  return t;
}

Table cmd_special(int n, Complex rho) {
  if (n < -1) throw std::invalid_argument("--n: must be >= -1");
  Table t;
  t.command = "special";
  t.add_meta("n", ll(n));
  t.add_meta("rho_re", rho.real());
  t.add_meta("rho_im", rho.imag());
  t.columns = {"function", "re", "im"};
  if (rho != Complex{0.0, 0.0}) {
    const Complex j = spherical_bessel_j(n, rho);
    t.rows.push_back({std::string("j"), j.real(), j.imag()});
  }
  if (n >= 0) {
    const Complex c = c_coeff(n, rho);
    t.rows.push_back({std::string("c"), c.real(), c.imag()});
  }
  return t;
}

Table cmd_asymptotic(const ScatterParams& params, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("--n-range: need 1 <= lo <= hi");
  if (params.delta() != 0.0) throw std::invalid_argument("--delta: asymptotic requires delta = 0");
  Table t;
  t.command = "asymptotic";
  add_params(t, params);
  t.columns = {"n", "s_n0_re", "s_n0_im", "asymptotic", "sign_match"};
  const CoeffTable table = coeff_table(params, n_hi);
  int matches = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double s = table(n, 0).real();
    const double a = s_n_forward_asymptotic(params, n);
    const bool match = (s >= 0.0) == (a >= 0.0);
    matches += match ? 1 : 0;
    t.rows.push_back({ll(n), s, table(n, 0).imag(), a, ll(match ? 1 : 0)});
  }
  t.add_meta("agreement_rate", static_cast<double>(matches) / (n_hi - n_lo + 1));
  t.add_meta("conditioning_warnings", static_cast<long long>(table.warnings().size()));
  return t;
}

Table cmd_sweep(const SweepGrid& grid, SweepWhat what, Channel channel, Truncation n_max, int jobs) {
  if (jobs < 1) throw std::invalid_argument("--jobs: must be >= 1");
  if (grid.gamma.empty() || grid.delta.empty() || grid.nbar.empty()) {
    throw std::invalid_argument("sweep: every grid axis needs at least one value");
  }
  struct Point {
    double gamma, delta, nbar;
  };
  std::vector<Point> points;
  for (double g : grid.gamma) {
    for (double d : grid.delta) {
      for (double nb : grid.nbar) points.push_back({g, d, nb});
    }
  }
  // Validate up front so errors do not depend on scheduling.
  for (const auto& p : points) {
    ScatterParams check(p.gamma, p.delta);
    (void)check;
    if (p.nbar < 0.0) throw std::invalid_argument("--nbar: must be >= 0");
  }

  std::vector<std::vector<std::vector<Cell>>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  auto work = [&](std::size_t i) {
    const Point& p = points[i];
    const ScatterParams params(p.gamma, p.delta);
    const CountDistribution dist = channel_distribution(params, p.nbar, channel, n_max);
    auto& rows = results[i];
    if (what == SweepWhat::Dist) {
      for (int n = 0; n <= dist.n_max(); ++n) {
        const auto k = static_cast<std::size_t>(n);
        rows.push_back({p.gamma, p.delta, p.nbar, ll(n), dist.raw[k], dist.probs[k]});
      }
    } else {
      const MomentReport m = moments(dist);
      const int peak = reentrant_peak(dist.probs, p.nbar);
      rows.push_back({p.gamma, p.delta, p.nbar, m.mean, m.variance, m.fano, m.mandel_q,
                      m.cumulants[0], m.cumulants[1], m.cumulants[2], m.cumulants[3],
                      dist.norm_defect, ll(peak),
                      peak >= 0 ? dist.probs[static_cast<std::size_t>(peak)] : 0.0});
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(jobs), points.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Table t;
  t.command = "sweep";
  t.add_meta("what", std::string(what == SweepWhat::Dist ? "dist" : "moments"));
  t.add_meta("channel", std::string(channel_flag(channel)));
  t.add_meta("points", static_cast<long long>(points.size()));
  if (what == SweepWhat::Dist) {
    t.columns = {"gamma", "delta", "nbar", "n", "p_raw", "p_normalized"};
    t.probability_columns = {"p_raw", "p_normalized"};
  } else {
    t.columns = {"gamma", "delta", "nbar", "mean", "variance", "fano", "mandel_q", "kappa_1",
                 "kappa_2", "kappa_3", "kappa_4", "norm_defect", "reentrant_n", "reentrant_p"};
  }
  for (auto& rows : results) {
    for (auto& row : rows) t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace fcs::cli
