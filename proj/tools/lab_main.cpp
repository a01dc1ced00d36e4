// lab: experiment runner, certificate CLI, and plot-data export.
// Exit codes: 0 pass, 1 tolerance failure, 2 configuration/usage error.
#include <iostream>

#include "CLI11.hpp"

#include "projlab/bounds.hpp"
#include "projlab/harness.hpp"

using namespace projlab;

namespace {

int cmd_run(const std::string& config_path) {
  ExperimentConfig cfg = parse_config(config_path);
  ExperimentReport rep = run_experiment(cfg);
  std::cout << rep.json_text;
  std::cerr << (rep.pass ? "PASS" : "FAIL") << " " << cfg.experiment
            << " -> " << rep.report_path << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_certify(const std::string& statement, const std::string& profile_path,
                const std::string& direction_path, const std::string& sigma_s,
                const std::string& eps_s, const std::string& seq_rule,
                const std::string& variant_s, const std::string& out_path,
                double dim_x, double s_param, i64 K, i64 r, i64 t, i64 C) {
  Rational eps = eps_s.empty() ? Rational(0) : parse_rational(eps_s);
  if (statement == "thm3.1") {
    Rational v = bound_thm31(parse_rational(std::to_string(dim_x)),
                             parse_rational(std::to_string(s_param)), eps, r);
    std::cout << "{\"statement_id\":\"thm3.1\",\"lower_bound\":\"" << v.str()
              << "\"}\n";
    return 0;
  }
  if (statement == "thm3.2") {
    Rational v = bound_thm32(K, r, t, C, eps);
    std::cout << "{\"statement_id\":\"thm3.2\",\"upper_bound\":\"" << v.str()
              << "\"}\n";
    return 0;
  }

  ComplexityProfile p_x = read_profile_file(profile_path);
  ComplexityProfile p_e = direction_path.empty()
                              ? ideal_direction_profile(p_x.horizon())
                              : read_profile_file(direction_path);
  ScaleSequence seq = scale_seq_up_to(seq_rule, (u64)p_x.horizon());
  BoundConfig cfg;
  cfg.b_min = 2;

  BoundCertificate cert;
  if (statement == "prop6.1") {
    cert = bourgain_certificate(p_x, p_e, seq, cfg);
  } else if (statement == "prop5.4" || statement == "prop5.1") {
    Rational sigma = sigma_s.empty() ? Rational(1) : parse_rational(sigma_s);
    BoundVariant v = statement == "prop5.1" ? BoundVariant::epsv
                     : variant_s == "sqrt"  ? BoundVariant::sqrtv
                                            : BoundVariant::log2v;
    cert = chain_certificate(p_x, p_e, seq, sigma, v, eps, cfg);
  } else {
    std::cerr << "unknown statement " << statement << "\n";
    return 2;
  }
  std::string text = cert.to_json() + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file_atomic(out_path, text);
  return cert.applicable ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projection-direction laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "key=value config file")->required();

  std::string statement, profile_path, direction_path, sigma_s, eps_s;
  std::string seq_rule = "geo:4", variant_s = "log2", out_path;
  double dim_x = 1.0, s_param = 1.0;
  i64 K = 0, r = 0, t = 0, C = 1;
  auto* cert = app.add_subcommand("certify", "compute a bound certificate");
  cert->add_option("--statement", statement, "prop5.4|prop5.1|prop6.1|thm3.1|thm3.2")
      ->required();
  cert->add_option("--profile", profile_path, "profile file for the point");
  cert->add_option("--direction", direction_path,
                   "profile file for the direction (default: ideal slope 1)");
  cert->add_option("--sigma", sigma_s, "rate parameter in (0,1]");
  cert->add_option("--eps", eps_s, "eps parameter (rational)");
  cert->add_option("--seq", seq_rule, "scale ladder rule (paper|geo:<k>|square)");
  cert->add_option("--variant", variant_s, "log2|sqrt (chained statements)");
  cert->add_option("--out", out_path, "write the certificate here");
  cert->add_option("--dim-x", dim_x, "thm3.1: effective dimension of x");
  cert->add_option("--s", s_param, "thm3.1: direction complexity rate");
  cert->add_option("--K", K, "thm3.2: complexity at precision r");
  cert->add_option("--r", r, "precision");
  cert->add_option("--t", t, "thm3.2: direction precision");
  cert->add_option("--C", C, "thm3.2: ratio bound");

  std::string report_path;
  auto* plot = app.add_subcommand("plot", "emit plot data files for a report");
  plot->add_option("report", report_path, "report.json path")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path);
    if (cert->parsed())
      return cmd_certify(statement, profile_path, direction_path, sigma_s,
                         eps_s, seq_rule, variant_s, out_path, dim_x, s_param,
                         K, r, t, C);
    if (plot->parsed()) {
      for (const auto& f : emit_plot_data(report_path))
        std::cout << f << "\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
