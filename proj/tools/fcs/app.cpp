#include "app.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "parse.hpp"
#include "validate.hpp"

namespace fcs::cli {
namespace {

struct Common {
  std::string format = "csv";
  std::string out_path;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format: csv or json")->capture_default_str();
  sub->add_option("--out", c.out_path, "Write to PATH instead of stdout");
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw InputError("--format", "expected csv or json, got '" + text + "'");
}

Complex parse_complex(const std::string& flag, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(flag, text), 0.0};
  return {parse_double(flag, text.substr(0, comma)), parse_double(flag, text.substr(comma + 1))};
}

ScatterParams make_params(const std::string& gamma, const std::string& delta) {
  const double g = parse_double("--gamma", gamma);
  if (g < 0.0) throw InputError("--gamma", "must be >= 0 (got " + gamma + ")");
  return ScatterParams(g, parse_double("--delta", delta));
}

double make_nbar(const std::string& text) {
  const double nbar = parse_double("--nbar", text);
  if (nbar < 0.0) throw InputError("--nbar", "must be >= 0 (got " + text + ")");
  return nbar;
}

Truncation make_nmax(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const int n = parse_int("--nmax", text);
  if (n < 0) throw InputError("--nmax", "must be >= 0");
  return n;
}

double make_T(const std::string& T, const std::string& gamma, const std::string& delta) {
  if (!T.empty()) {
    const double v = parse_double("--T", T);
    if (v < 0.0 || v > 1.0) throw InputError("--T", "must lie in [0, 1] (got " + T + ")");
    return v;
  }
  if (gamma.empty()) throw InputError("--T", "give --T or --gamma/--delta");
  const ScatterParams p = make_params(gamma, delta.empty() ? "0" : delta);
  if (p.gamma() == 0.0 && p.delta() == 0.0) throw InputError("--gamma", "gamma = delta = 0 has no continuum amplitudes");
  return continuum_amplitudes(p).T;
}

void emit(const Table& table, const Common& c, std::ostream& out) {
  const Format format = parse_format(c.format);
  if (c.out_path.empty()) {
    write(table, format, out);
    return;
  }
  std::ofstream file(c.out_path);
  if (!file) throw InputError("--out", "cannot open '" + c.out_path + "' for writing");
  write(table, format, file);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Full counting statistics of light scattered by a two-level emitter in a waveguide", "fcs"};
  app.require_subcommand(1);

  // Shared storage: only one subcommand runs per invocation.
  Common common;
  std::string gamma, delta = "0", nbar, channel = "r", nmax, state, T, route = "bessel";
  std::string lambda_r = "0", lambda_l = "0", z_r, z_l, w = "0", n_text = "0", rho, n_range = "200:320";
  std::string what = "moments", json_path, perturb = "0";
  int jobs = 1;
  std::function<int()> action;

  auto* dist = app.add_subcommand("dist", "Forward/backward photon-number distribution (finite L)");
  dist->add_option("--gamma", gamma, "Coupling gamma >= 0")->required();
  dist->add_option("--delta", delta, "Detuning delta")->capture_default_str();
  dist->add_option("--nbar", nbar, "Mean photon number of the coherent pulse")->required();
  dist->add_option("--channel", channel, "r (forward) or l (backward)")->capture_default_str();
  dist->add_option("--nmax", nmax, "Truncation (default: automatic)");
  add_common(dist, common);
  dist->callback([&] {
    action = [&] {
      emit(cmd_dist(make_params(gamma, delta), make_nbar(nbar), parse_channel("--channel", channel), make_nmax(nmax)), common, out);
      return 0;
    };
  });

  auto* joint = app.add_subcommand("joint", "Joint forward/backward distribution q[n][m]");
  joint->add_option("--gamma", gamma, "Coupling gamma >= 0")->required();
  joint->add_option("--delta", delta, "Detuning delta")->capture_default_str();
  joint->add_option("--nbar", nbar, "Mean photon number")->required();
  joint->add_option("--nmax", nmax, "Truncation (default: automatic)");
  add_common(joint, common);
  joint->callback([&] {
    action = [&] {
      emit(cmd_joint(make_params(gamma, delta), make_nbar(nbar), make_nmax(nmax)), common, out);
      return 0;
    };
  });

  auto* coeffs = app.add_subcommand("coeffs", "Coefficient table s_nm");
  coeffs->add_option("--gamma", gamma, "Coupling gamma >= 0")->required();
  coeffs->add_option("--delta", delta, "Detuning delta")->capture_default_str();
  coeffs->add_option("--nmax", nmax, "Largest n + m (default 10)");
  coeffs->add_option("--route", route, "bessel or oracle")->capture_default_str();
  add_common(coeffs, common);
  coeffs->callback([&] {
    action = [&] {
      CoeffRoute r;
      if (route == "bessel") {
        r = CoeffRoute::BesselSum;
      } else if (route == "oracle") {
        r = CoeffRoute::JetOracle;
      } else {
        throw InputError("--route", "expected bessel or oracle, got '" + route + "'");
      }
      emit(cmd_coeffs(make_params(gamma, delta), make_nmax(nmax).value_or(10), r), common, out);
      return 0;
    };
  });

  auto* cont = app.add_subcommand("continuum", "Continuous-radiation limit for arbitrary states");
  cont->add_option("--state", state, "coherent:NBAR | fock:N | squeezed:MAG,THETA | custom:FILE")->required();
  cont->add_option("--T", T, "Transmission probability in [0, 1]");
  cont->add_option("--gamma", gamma, "Derive T from gamma and delta instead of --T");
  cont->add_option("--delta", delta, "Detuning used with --gamma");
  cont->add_option("--channel", channel, "r (forward) or l (backward)")->capture_default_str();
  cont->add_option("--nmax", nmax, "Truncation (default: state support)");
  add_common(cont, common);
  cont->callback([&] {
    action = [&] {
      const double t = make_T(T, gamma, delta);
      const Channel ch = parse_channel("--channel", channel);
      emit(cmd_continuum(parse_state(state), state, t, ch, make_nmax(nmax)), common, out);
      return 0;
    };
  });

  auto* gf = app.add_subcommand("gf", "Generating function F(lambda_r, lambda_l)");
  gf->add_option("--gamma", gamma, "Coupling gamma >= 0");
  gf->add_option("--delta", delta, "Detuning delta")->capture_default_str();
  gf->add_option("--nbar", nbar, "Mean photon number");
  gf->add_option("--lambda-r", lambda_r, "Counting field, forward")->capture_default_str();
  gf->add_option("--lambda-l", lambda_l, "Counting field, backward")->capture_default_str();
  gf->add_option("--z-r", z_r, "Real fugacity in [-1, 1] (with --z-l)");
  gf->add_option("--z-l", z_l, "Real fugacity in [-1, 1] (with --z-r)");
  gf->add_option("--state", state, "Evaluate the continuum F for this state instead");
  gf->add_option("--T", T, "Transmission for --state");
  gf->add_option("--nmax", nmax, "Truncation (default: automatic)");
  add_common(gf, common);
  gf->callback([&] {
    action = [&] {
      const double lr = parse_double("--lambda-r", lambda_r);
      const double lrl = parse_double("--lambda-l", lambda_l);
      if (!state.empty()) {
        emit(cmd_gf_continuum(parse_state(state), state, make_T(T, gamma, delta), lr, lrl), common, out);
        return 0;
      }
      if (gamma.empty()) throw InputError("--gamma", "required unless --state is given");
      if (nbar.empty()) throw InputError("--nbar", "required unless --state is given");
      const ScatterParams p = make_params(gamma, delta);
      if (!z_r.empty() || !z_l.empty()) {
        const double zr = parse_double("--z-r", z_r.empty() ? "1" : z_r);
        const double zl = parse_double("--z-l", z_l.empty() ? "1" : z_l);
        if (std::abs(zr) > 1.0) throw InputError("--z-r", "must lie in [-1, 1]");
        if (std::abs(zl) > 1.0) throw InputError("--z-l", "must lie in [-1, 1]");
        emit(cmd_gf_real(p, make_nbar(nbar), zr, zl, make_nmax(nmax)), common, out);
        return 0;
      }
      emit(cmd_gf(p, make_nbar(nbar), lr, lrl, make_nmax(nmax)), common, out);
      return 0;
    };
  });

  auto* kernel = app.add_subcommand("kernel", "Vacuum kernel d(w) through every route");
  kernel->add_option("--gamma", gamma, "Coupling gamma >= 0")->required();
  kernel->add_option("--delta", delta, "Detuning delta")->capture_default_str();
  kernel->add_option("--w", w, "Argument RE[,IM]")->capture_default_str();
  add_common(kernel, common);
  kernel->callback([&] {
    action = [&] {
      emit(cmd_kernel(make_params(gamma, delta), parse_complex("--w", w)), common, out);
      return 0;
    };
  });

  auto* special = app.add_subcommand("special", "Spherical Bessel j_n(rho) and c_n(rho)");
  special->add_option("--n", n_text, "Order n >= -1")->capture_default_str();
  special->add_option("--rho", rho, "Argument RE[,IM]")->required();
  add_common(special, common);
  special->callback([&] {
    action = [&] {
      const int n = parse_int("--n", n_text);
      if (n < -1) throw InputError("--n", "must be >= -1");
      emit(cmd_special(n, parse_complex("--rho", rho)), common, out);
      return 0;
    };
  });

  auto* asym = app.add_subcommand("asymptotic", "Forward coefficient vs cos(sqrt(gamma n/2)) at resonance");
  asym->add_option("--gamma", gamma, "Coupling gamma >= 0")->required();
  asym->add_option("--delta", delta, "Must be 0")->capture_default_str();
  asym->add_option("--n-range", n_range, "LO:HI")->capture_default_str();
  add_common(asym, common);
  asym->callback([&] {
    action = [&] {
      const auto colon = n_range.find(':');
      if (colon == std::string::npos) throw InputError("--n-range", "expected LO:HI");
      const int lo = parse_int("--n-range", n_range.substr(0, colon));
      const int hi = parse_int("--n-range", n_range.substr(colon + 1));
      if (lo < 1 || hi < lo) throw InputError("--n-range", "need 1 <= LO <= HI");
      emit(cmd_asymptotic(make_params(gamma, delta), lo, hi), common, out);
      return 0;
    };
  });

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over (gamma, delta, nbar)");
  sweep->add_option("--gamma", gamma, "START:STOP:COUNT or a,b,c")->required();
  sweep->add_option("--delta", delta, "START:STOP:COUNT or a,b,c")->capture_default_str();
  sweep->add_option("--nbar", nbar, "START:STOP:COUNT or a,b,c")->required();
  sweep->add_option("--what", what, "dist or moments")->capture_default_str();
  sweep->add_option("--channel", channel, "r or l")->capture_default_str();
  sweep->add_option("--nmax", nmax, "Truncation (default: automatic per point)");
  sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  add_common(sweep, common);
  sweep->callback([&] {
    action = [&] {
      SweepGrid grid{parse_grid("--gamma", gamma), parse_grid("--delta", delta), parse_grid("--nbar", nbar)};
      for (double g : grid.gamma) {
        if (g < 0.0) throw InputError("--gamma", "values must be >= 0");
      }
      for (double nb : grid.nbar) {
        if (nb < 0.0) throw InputError("--nbar", "values must be >= 0");
      }
      SweepWhat sw;
      if (what == "dist") {
        sw = SweepWhat::Dist;
      } else if (what == "moments") {
        sw = SweepWhat::Moments;
      } else {
        throw InputError("--what", "expected dist or moments, got '" + what + "'");
      }
      if (jobs < 1) throw InputError("--jobs", "must be >= 1");
      emit(cmd_sweep(grid, sw, parse_channel("--channel", channel), make_nmax(nmax), jobs), common, out);
      return 0;
    };
  });

  auto* val = app.add_subcommand("validate", "Run the invariant suites; exit 5 on any failure");
  val->add_option("--json", json_path, "Also write the JSON report to PATH");
  val->add_option("--perturb-s", perturb, "Scale every s_nm by (1 + EPS) (fault injection)")->capture_default_str();
  add_common(val, common);
  val->callback([&] {
    action = [&] {
      const double eps = parse_double("--perturb-s", perturb);
      const auto checks = run_validation(eps);
      const Table table = validation_table(checks, eps);
      emit(table, common, out);
      if (!json_path.empty()) {
        std::ofstream file(json_path);
        if (!file) throw InputError("--json", "cannot open '" + json_path + "' for writing");
        write_json(table, file);
      }
      for (const auto& c : checks) {
        if (!c.passed) {
          err << "validate: " << c.name << " residual " << format_number(c.residual) << " exceeds "
              << format_number(c.tolerance) << '\n';
        }
      }
      const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
      return ok ? 0 : static_cast<int>(kExitValidation);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    return action();
  } catch (const NormalizationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNormalization;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fcs::cli
