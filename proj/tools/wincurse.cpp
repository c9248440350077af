// Command-line front end: corrects significance-filtered effect estimates
// for selection inflation, runs the simulation harness, and reports model
// weights. See README.md for file formats.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wincurse/bma.hpp"
#include "wincurse/conditional.hpp"
#include "wincurse/summary_io.hpp"

namespace {

using namespace wincurse;

struct CommonFlags {
  int iterations = 20000;
  int burn_in = 5000;
  double proposal_sd = 0.1;
  double u_max = 2.0;
  std::uint64_t seed = 1;
  std::string format = "both";
  int threads = 0;
};

void add_chain_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--iterations", f.iterations, "MCMC sweeps per chain")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--burnin", f.burn_in, "discarded leading sweeps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--proposal-sd", f.proposal_sd, "random-walk proposal scale on theta")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--u-max", f.u_max, "slab upper bound on the effect")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "base RNG seed")->capture_default_str();
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"tsv", "json", "both"}))
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
}

int run_correct(const std::string& input, const std::string& out_prefix, const CommonFlags& f,
                const std::optional<double>& alpha_override,
                const std::optional<std::string>& convention_override,
                const std::vector<std::pair<double, double>>& extra_priors, double ci_level,
                double hpd_mass) {
  CorrectOptions opt;
  opt.chain = ChainConfig{f.iterations, f.burn_in, f.proposal_sd, 0};
  opt.u_max = f.u_max;
  opt.base_seed = f.seed;
  opt.ci_level = ci_level;
  opt.hpd_mass = hpd_mass;
  opt.threads = f.threads;
  opt.alpha_override = alpha_override;
  if (convention_override)
    opt.convention_override = p_convention_from_string(*convention_override);
  for (const auto& [a, b] : extra_priors) opt.extra_priors.push_back(SpikeSlabPrior{a, b, f.u_max});

  const ParsedInput parsed = read_summary_tsv(input);
  CorrectRun run = correct_records(parsed.records, opt);
  // Keep malformed-line diagnostics alongside the non-significant skips.
  run.skipped.insert(run.skipped.end(), parsed.malformed.begin(), parsed.malformed.end());

  for (const auto& s : run.skipped)
    std::cerr << "skipped line " << s.line << " (" << (s.snp_id.empty() ? "?" : s.snp_id)
              << "): " << s.reason << "\n";

  if (f.format == "tsv" || f.format == "both") write_report_tsv(out_prefix + ".tsv", run, opt);
  if (f.format == "json" || f.format == "both") write_report_json(out_prefix + ".json", run, opt);
  return run.skipped.empty() ? 0 : 2;
}

int run_simulate(const std::string& config_path, const std::string& out_prefix,
                 const CommonFlags& f) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config: " + config_path);
  nlohmann::json cfg = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);

  const std::string mode = cfg.value("mode", "grid");
  const double sigma = cfg.value("sigma", 1.6855);
  const double mu_true = cfg.value("mu_true", 0.09531017980432486);
  const std::vector<double> alphas = cfg.value("alphas", std::vector<double>{0.05, 1e-4, 1e-6});
  const std::vector<double> powers =
      cfg.value("powers", std::vector<double>{0.1, 0.2, 0.5, 0.9, 0.99});
  const int replicates = cfg.value("replicates", 200);

  SimulationOptions opt;
  opt.chain = ChainConfig{f.iterations, f.burn_in, f.proposal_sd, 0};
  opt.u_max = cfg.value("u_max", f.u_max);
  opt.base_seed = f.seed;
  opt.threads = f.threads;

  if (mode == "sample_sizes") {
    const auto cells = sample_size_table(mu_true, sigma, alphas, powers);
    if (f.format == "tsv" || f.format == "both")
      write_sample_sizes_tsv(out_prefix + ".tsv", cells, mu_true, sigma);
    if (f.format == "json" || f.format == "both")
      write_sample_sizes_json(out_prefix + ".json", cells, mu_true, sigma);
    return 0;
  }

  std::vector<SummaryTable> tables;
  if (mode == "grid") {
    for (double alpha : alphas)
      for (double power : powers)
        tables.push_back(
            run_scenario(scenario_from_power(mu_true, sigma, alpha, power, replicates), opt));
  } else if (mode == "fixed_n") {
    if (!cfg.contains("n")) throw std::runtime_error("fixed_n mode needs \"n\"");
    const std::int64_t n = cfg.at("n").get<std::int64_t>();
    const std::vector<double> mus = cfg.value("mus", std::vector<double>{mu_true});
    tables = fixed_n_sweep(n, mus, alphas, sigma, replicates, opt);
  } else {
    throw std::runtime_error("unknown mode: " + mode);
  }

  if (f.format == "tsv" || f.format == "both")
    write_summary_tables_tsv(out_prefix + ".tsv", tables, opt);
  if (f.format == "json" || f.format == "both")
    write_summary_tables_json(out_prefix + ".json", tables, opt);
  return 0;
}

int run_weights(const std::optional<double>& c_opt, const std::optional<double>& alpha_opt,
                double r) {
  if (!c_opt && !alpha_opt) throw std::runtime_error("need --c or --alpha");
  const double c = c_opt ? *c_opt : critical_value(*alpha_opt);
  const WeightPair prior = prior_model_weights(c);
  const double post1 = r * prior.w1 / (r * prior.w1 + prior.w2);
  std::printf("critical_value\t%.12g\n", c);
  std::printf("prior_w1\t%.12g\nprior_w2\t%.12g\n", prior.w1, prior.w2);
  std::printf("r\t%.12g\n", r);
  std::printf("posterior_w1\t%.12g\nposterior_w2\t%.12g\n", post1, 1.0 - post1);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"winner's-curse correction of significant effect estimates"};
  app.require_subcommand(1);

  // correct
  auto* correct = app.add_subcommand("correct", "correct a summary-statistics file");
  std::string input, out_prefix = "report";
  CommonFlags cf;
  std::optional<double> alpha_override;
  std::optional<std::string> convention_override;
  std::vector<std::pair<double, double>> extra_priors;
  double ci_level = 0.95, hpd_mass = 0.95;
  correct->add_option("input", input, "input TSV")->required()->check(CLI::ExistingFile);
  correct->add_option("--out", out_prefix, "output path prefix")->capture_default_str();
  add_chain_flags(correct, cf);
  correct->add_option("--alpha", alpha_override, "override every record's threshold");
  correct->add_option("--p-convention", convention_override, "override p conversion")
      ->check(CLI::IsMember({"one_sided", "two_sided"}));
  correct
      ->add_option("--prior", extra_priors,
                   "extra Beta(a,b) hyperprior column (repeatable), e.g. --prior 2 2")
      ->expected(-1);
  correct->add_option("--ci-level", ci_level, "profile-interval level")->capture_default_str();
  correct->add_option("--hpd-mass", hpd_mass, "posterior mass of reported intervals")
      ->capture_default_str();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the factorial simulation study");
  std::string config_path, sim_out = "simulation";
  CommonFlags sf;
  simulate->add_option("config", config_path, "JSON scenario config")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "output path prefix")->capture_default_str();
  add_chain_flags(simulate, sf);

  // weights
  auto* weights = app.add_subcommand("weights", "prior/posterior model weights for a threshold");
  std::optional<double> w_c, w_alpha;
  double w_r = 1.0;
  weights->add_option("--c", w_c, "critical value");
  weights->add_option("--alpha", w_alpha, "one-sided level (alternative to --c)");
  weights->add_option("--r", w_r, "marginal likelihood ratio")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (correct->parsed())
      return run_correct(input, out_prefix, cf, alpha_override, convention_override,
                         extra_priors, ci_level, hpd_mass);
    if (simulate->parsed()) return run_simulate(config_path, sim_out, sf);
    if (weights->parsed()) return run_weights(w_c, w_alpha, w_r);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
