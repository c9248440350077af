#include "wincurse/summary_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "wincurse/bma.hpp"
#include "wincurse/conditional.hpp"
#include "wincurse/estimators.hpp"
#include "wincurse/hpd.hpp"
#include "wincurse/normal.hpp"
#include "wincurse/parallel.hpp"

namespace wincurse {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("bad ") + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw std::runtime_error(std::string("bad ") + what + ": '" + s + "'");
  return v;
}

// Writes content to path atomically: temp file in the same directory, then
// rename over the target.
void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string extra_prior_label(const SpikeSlabPrior& p) {
  std::ostringstream os;
  os << "B(" << fmt(p.a) << "," << fmt(p.b) << ")";
  return os.str();
}

nlohmann::json run_metadata(const CorrectOptions& opt) {
  return nlohmann::json{{"version", kVersion},
                        {"base_seed", opt.base_seed},
                        {"iterations", opt.chain.iterations},
                        {"burn_in", opt.chain.burn_in},
                        {"proposal_sd", opt.chain.proposal_sd},
                        {"u_max", opt.u_max},
                        {"ci_level", opt.ci_level},
                        {"hpd_mass", opt.hpd_mass}};
}

}  // namespace

const char* to_string(PConvention c) {
  return c == PConvention::one_sided ? "one_sided" : "two_sided";
}
const char* to_string(EffectScale s) {
  return s == EffectScale::log_or ? "log_or" : "coefficient";
}

PConvention p_convention_from_string(const std::string& s) {
  if (s == "one_sided") return PConvention::one_sided;
  if (s == "two_sided") return PConvention::two_sided;
  throw std::runtime_error("bad p_convention: '" + s + "'");
}

EffectScale effect_scale_from_string(const std::string& s) {
  if (s == "log_or") return EffectScale::log_or;
  if (s == "coefficient") return EffectScale::coefficient;
  throw std::runtime_error("bad effect_scale: '" + s + "'");
}

NotSignificantError::NotSignificantError(const std::string& snp)
    : std::runtime_error("record '" + snp + "' is not significant at its threshold") {}

TestContext ingest(const SummaryRecord& record) {
  if (!(record.beta_hat > 0.0))
    throw std::runtime_error("record '" + record.snp_id +
                             "': beta_hat must be positive (risk-oriented)");
  if (!(record.alpha > 0.0 && record.alpha < 0.5))
    throw std::runtime_error("record '" + record.snp_id + "': alpha must be in (0, 0.5)");
  if (!record.p_value && !record.se)
    throw std::runtime_error("record '" + record.snp_id + "': need p_value or se");

  double t_obs, se;
  if (record.se) {
    if (!(*record.se > 0.0))
      throw std::runtime_error("record '" + record.snp_id + "': se must be positive");
    se = *record.se;
    t_obs = record.beta_hat / se;
  } else {
    const double p = *record.p_value;
    if (!(p > 0.0 && p < 1.0))
      throw std::runtime_error("record '" + record.snp_id + "': p_value must be in (0, 1)");
    t_obs = record.p_convention == PConvention::one_sided
                ? standard_normal_upper_quantile(p)
                : standard_normal_upper_quantile(0.5 * p);
    se = 0.0;  // set below once significance is established (t_obs > 0)
  }

  const double c = critical_value(record.alpha);
  if (!(t_obs > c)) throw NotSignificantError(record.snp_id);
  if (!record.se) se = record.beta_hat / t_obs;
  return TestContext{t_obs, record.alpha, c, se};
}

double emit_p_value(double t_obs, PConvention convention) {
  const double tail = standard_normal_upper_tail(t_obs);
  return convention == PConvention::one_sided ? tail : 2.0 * tail;
}

ReportRow correct_record(const SummaryRecord& record_in, const CorrectOptions& opt,
                         std::uint64_t record_seed) {
  SummaryRecord record = record_in;
  if (opt.alpha_override) record.alpha = *opt.alpha_override;
  if (opt.convention_override) record.p_convention = *opt.convention_override;
  const TestContext ctx = ingest(record);

  ReportRow row;
  row.record = record;
  row.t_obs = ctx.t_obs;
  row.crit = ctx.c;
  row.naive = naive_estimate(ctx).point;
  const EstimateRecord mle = conditional_mle(ctx);
  row.mle = mle.point;
  row.mle_clamped = mle.clamped;
  const EffectInterval ci = profile_confidence_interval(ctx, opt.ci_level);
  row.mle_ci_low = ci.low;
  row.mle_ci_high = ci.high;

  const auto run_preset = [&](PresetPrior which, std::uint64_t stream) {
    ChainConfig cfg = opt.chain;
    cfg.seed = derive_seed(record_seed, stream);
    return run_chain(ctx, preset_prior(which, opt.u_max), cfg);
  };
  const ChainResult bl = run_preset(PresetPrior::skeptical, 1);
  const ChainResult bh = run_preset(PresetPrior::confident, 2);
  const ChainResult bm = run_preset(PresetPrior::middle, 3);
  const ChainResult bu = run_preset(PresetPrior::uniform, 4);

  const auto hpd_of = [&](const ChainResult& chain) {
    std::vector<double> mu;
    mu.reserve(chain.draws.size());
    for (const auto& d : chain.draws) mu.push_back(d.mu);
    return hpd_interval(std::move(mu), opt.hpd_mass);
  };
  row.b_l = bl.posterior_mean_mu;
  const HpdInterval hl = hpd_of(bl);
  row.b_l_hpd_low = hl.low;
  row.b_l_hpd_high = hl.high;
  row.b_h = bh.posterior_mean_mu;
  const HpdInterval hh = hpd_of(bh);
  row.b_h_hpd_low = hh.low;
  row.b_h_hpd_high = hh.high;
  row.b_m = bm.posterior_mean_mu;
  row.b_unif = bu.posterior_mean_mu;

  const BridgeEstimate bridge =
      bridge_ratio(bl, bh, preset_prior(PresetPrior::skeptical, opt.u_max),
                   preset_prior(PresetPrior::confident, opt.u_max), BridgeKind::optimal);
  row.r_hat = bridge.r_hat;
  row.bridge_converged = bridge.converged;
  row.b_bma = bma_estimate(row.b_l, row.b_h, row.r_hat, ctx.c).point;

  for (std::size_t j = 0; j < opt.extra_priors.size(); ++j) {
    SpikeSlabPrior prior = opt.extra_priors[j];
    prior.u_max = opt.u_max;
    ChainConfig cfg = opt.chain;
    cfg.seed = derive_seed(record_seed, 5 + j);
    const ChainResult chain = run_chain(ctx, prior, cfg);
    row.extra.emplace_back(extra_prior_label(prior), chain.posterior_mean_mu);
  }
  return row;
}

CorrectRun correct_records(const std::vector<SummaryRecord>& records,
                           const CorrectOptions& opt) {
  const int n = int(records.size());
  std::vector<std::optional<ReportRow>> rows(n);
  std::vector<std::optional<SkippedRecord>> skips(n);

  parallel_for(n, opt.threads, [&](int i) {
    try {
      rows[i] = correct_record(records[i], opt, opt.base_seed + std::uint64_t(i));
    } catch (const std::exception& e) {
      skips[i] = SkippedRecord{records[i].source_line, records[i].snp_id, e.what()};
    }
  });

  CorrectRun out;
  for (int i = 0; i < n; ++i) {
    if (rows[i]) out.rows.push_back(std::move(*rows[i]));
    if (skips[i]) out.skipped.push_back(std::move(*skips[i]));
  }
  return out;
}

ParsedInput read_summary_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input: " + path);

  ParsedInput parsed;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (!header_seen) {
      header_seen = true;  // first non-comment line is the header
      if (fields.empty() || fields[0] != "snp_id")
        throw std::runtime_error(path + ": first column must be snp_id");
      continue;
    }
    try {
      if (fields.size() < 7 || fields.size() > 8)
        throw std::runtime_error("expected 7 or 8 tab-separated columns, got " +
                                 std::to_string(fields.size()));
      SummaryRecord rec;
      rec.snp_id = fields[0];
      if (!fields[1].empty()) rec.p_value = parse_double(fields[1], "p_value");
      rec.beta_hat = parse_double(fields[2], "beta_hat");
      if (!fields[3].empty()) rec.se = parse_double(fields[3], "se");
      rec.alpha = parse_double(fields[4], "alpha");
      rec.p_convention = p_convention_from_string(fields[5]);
      rec.effect_scale = effect_scale_from_string(fields[6]);
      if (fields.size() == 8) rec.follow_up = fields[7];
      rec.source_line = line_no;
      parsed.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      const std::string snp = fields.empty() ? "" : fields[0];
      parsed.malformed.push_back(SkippedRecord{line_no, snp, e.what()});
    }
  }
  return parsed;
}

void write_report_tsv(const std::string& path, const CorrectRun& run,
                      const CorrectOptions& opt) {
  std::ostringstream os;
  os << "# version: " << kVersion << "\n";
  os << "# base_seed: " << opt.base_seed << "\n";
  os << "# iterations: " << opt.chain.iterations << "\tburn_in: " << opt.chain.burn_in
     << "\tproposal_sd: " << fmt(opt.chain.proposal_sd) << "\n";
  os << "# u_max: " << fmt(opt.u_max) << "\tci_level: " << fmt(opt.ci_level)
     << "\thpd_mass: " << fmt(opt.hpd_mass) << "\n";

  os << "snp_id\tp_value\tbeta_hat\tse\talpha\tp_convention\teffect_scale\tfollow_up"
        "\tt_obs\tcritical_value"
        "\tnaive\tmle\tmle_clamped\tmle_ci_low\tmle_ci_high"
        "\tb_l\tb_l_hpd_low\tb_l_hpd_high\tb_h\tb_h_hpd_low\tb_h_hpd_high"
        "\tb_m\tb_unif\tb_bma\tr_hat\tbridge_converged";
  if (!run.rows.empty())
    for (const auto& [label, value] : run.rows.front().extra) {
      (void)value;
      os << "\t" << label;
    }
  os << "\tor_naive\tor_mle\tor_mle_ci_low\tor_mle_ci_high"
        "\tor_b_l\tor_b_l_hpd_low\tor_b_l_hpd_high\tor_b_h\tor_b_h_hpd_low\tor_b_h_hpd_high"
        "\tor_b_m\tor_b_unif\tor_b_bma\n";

  for (const auto& row : run.rows) {
    const auto& rec = row.record;
    os << rec.snp_id << "\t" << fmt(emit_p_value(row.t_obs, rec.p_convention)) << "\t"
       << fmt(rec.beta_hat) << "\t" << fmt(rec.se ? *rec.se : row.record.beta_hat / row.t_obs)
       << "\t" << fmt(rec.alpha) << "\t" << to_string(rec.p_convention) << "\t"
       << to_string(rec.effect_scale) << "\t" << rec.follow_up << "\t" << fmt(row.t_obs)
       << "\t" << fmt(row.crit);
    os << "\t" << fmt(row.naive) << "\t" << fmt(row.mle) << "\t" << (row.mle_clamped ? 1 : 0)
       << "\t" << fmt(row.mle_ci_low) << "\t" << fmt(row.mle_ci_high);
    os << "\t" << fmt(row.b_l) << "\t" << fmt(row.b_l_hpd_low) << "\t" << fmt(row.b_l_hpd_high)
       << "\t" << fmt(row.b_h) << "\t" << fmt(row.b_h_hpd_low) << "\t" << fmt(row.b_h_hpd_high);
    os << "\t" << fmt(row.b_m) << "\t" << fmt(row.b_unif) << "\t" << fmt(row.b_bma) << "\t"
       << fmt(row.r_hat) << "\t" << (row.bridge_converged ? 1 : 0);
    for (const auto& [label, value] : row.extra) {
      (void)label;
      os << "\t" << fmt(value);
    }
    if (rec.effect_scale == EffectScale::log_or) {
      // Single conversion point: OR columns are exp() of the effect columns.
      for (double v : {row.naive, row.mle, row.mle_ci_low, row.mle_ci_high, row.b_l,
                       row.b_l_hpd_low, row.b_l_hpd_high, row.b_h, row.b_h_hpd_low,
                       row.b_h_hpd_high, row.b_m, row.b_unif, row.b_bma})
        os << "\t" << fmt(std::exp(v));
    } else {
      for (int k = 0; k < 13; ++k) os << "\t";
    }
    os << "\n";
  }
  atomic_write(path, os.str());
}

void write_report_json(const std::string& path, const CorrectRun& run,
                       const CorrectOptions& opt) {
  nlohmann::json doc;
  doc["run"] = run_metadata(opt);
  doc["records"] = nlohmann::json::array();
  for (const auto& row : run.rows) {
    const auto& rec = row.record;
    nlohmann::json j{{"snp_id", rec.snp_id},
                     {"p_value", emit_p_value(row.t_obs, rec.p_convention)},
                     {"beta_hat", rec.beta_hat},
                     {"se", rec.se ? *rec.se : rec.beta_hat / row.t_obs},
                     {"alpha", rec.alpha},
                     {"p_convention", to_string(rec.p_convention)},
                     {"effect_scale", to_string(rec.effect_scale)},
                     {"follow_up", rec.follow_up},
                     {"t_obs", row.t_obs},
                     {"critical_value", row.crit},
                     {"naive", row.naive},
                     {"mle", row.mle},
                     {"mle_clamped", row.mle_clamped},
                     {"mle_ci_low", row.mle_ci_low},
                     {"mle_ci_high", row.mle_ci_high},
                     {"b_l", row.b_l},
                     {"b_l_hpd_low", row.b_l_hpd_low},
                     {"b_l_hpd_high", row.b_l_hpd_high},
                     {"b_h", row.b_h},
                     {"b_h_hpd_low", row.b_h_hpd_low},
                     {"b_h_hpd_high", row.b_h_hpd_high},
                     {"b_m", row.b_m},
                     {"b_unif", row.b_unif},
                     {"b_bma", row.b_bma},
                     {"r_hat", row.r_hat},
                     {"bridge_converged", row.bridge_converged}};
    if (!row.extra.empty()) {
      nlohmann::json extras = nlohmann::json::object();
      for (const auto& [label, value] : row.extra) extras[label] = value;
      j["extra_priors"] = extras;
    }
    if (rec.effect_scale == EffectScale::log_or) {
      j["or_scale"] = nlohmann::json{{"naive", std::exp(row.naive)},
                                     {"mle", std::exp(row.mle)},
                                     {"mle_ci_low", std::exp(row.mle_ci_low)},
                                     {"mle_ci_high", std::exp(row.mle_ci_high)},
                                     {"b_l", std::exp(row.b_l)},
                                     {"b_l_hpd_low", std::exp(row.b_l_hpd_low)},
                                     {"b_l_hpd_high", std::exp(row.b_l_hpd_high)},
                                     {"b_h", std::exp(row.b_h)},
                                     {"b_h_hpd_low", std::exp(row.b_h_hpd_low)},
                                     {"b_h_hpd_high", std::exp(row.b_h_hpd_high)},
                                     {"b_m", std::exp(row.b_m)},
                                     {"b_unif", std::exp(row.b_unif)},
                                     {"b_bma", std::exp(row.b_bma)}};
    }
    doc["records"].push_back(std::move(j));
  }
  doc["skipped"] = nlohmann::json::array();
  for (const auto& s : run.skipped)
    doc["skipped"].push_back(
        nlohmann::json{{"line", s.line}, {"snp_id", s.snp_id}, {"reason", s.reason}});
  atomic_write(path, doc.dump(2) + "\n");
}

void write_summary_tables_tsv(const std::string& path, const std::vector<SummaryTable>& tables,
                              const SimulationOptions& opt) {
  std::ostringstream os;
  os << "# version: " << kVersion << "\n";
  os << "# base_seed: " << opt.base_seed << "\n";
  os << "# iterations: " << opt.chain.iterations << "\tburn_in: " << opt.chain.burn_in
     << "\tproposal_sd: " << fmt(opt.chain.proposal_sd) << "\tu_max: " << fmt(opt.u_max)
     << "\n";
  os << "alpha\tpower\tn\tmu_true\tsigma\treplicates\tmethod\tmean\tbias\tvariance\trmse\n";
  for (const auto& table : tables) {
    const auto& s = table.scenario;
    for (const auto& m : table.methods) {
      os << fmt(s.alpha) << "\t" << fmt(s.power) << "\t" << s.n << "\t" << fmt(s.mu_true)
         << "\t" << fmt(s.sigma) << "\t" << s.replicates << "\t" << m.method << "\t"
         << fmt(m.mean) << "\t" << fmt(m.bias) << "\t" << fmt(m.variance) << "\t"
         << fmt(m.rmse) << "\n";
    }
  }
  atomic_write(path, os.str());
}

void write_summary_tables_json(const std::string& path, const std::vector<SummaryTable>& tables,
                               const SimulationOptions& opt) {
  nlohmann::json doc;
  doc["run"] = nlohmann::json{{"version", kVersion},
                              {"base_seed", opt.base_seed},
                              {"iterations", opt.chain.iterations},
                              {"burn_in", opt.chain.burn_in},
                              {"proposal_sd", opt.chain.proposal_sd},
                              {"u_max", opt.u_max}};
  doc["cells"] = nlohmann::json::array();
  for (const auto& table : tables) {
    const auto& s = table.scenario;
    nlohmann::json cell{{"alpha", s.alpha},   {"power", s.power},
                        {"n", s.n},           {"mu_true", s.mu_true},
                        {"sigma", s.sigma},   {"replicates", s.replicates},
                        {"base_seed", table.base_seed}};
    cell["methods"] = nlohmann::json::array();
    for (const auto& m : table.methods)
      cell["methods"].push_back(nlohmann::json{{"method", m.method},
                                               {"mean", m.mean},
                                               {"bias", m.bias},
                                               {"variance", m.variance},
                                               {"rmse", m.rmse}});
    doc["cells"].push_back(std::move(cell));
  }
  atomic_write(path, doc.dump(2) + "\n");
}

std::vector<SampleSizeCell> sample_size_table(double mu, double sigma,
                                              const std::vector<double>& alphas,
                                              const std::vector<double>& powers) {
  std::vector<SampleSizeCell> cells;
  cells.reserve(alphas.size() * powers.size());
  for (double alpha : alphas)
    for (double power : powers)
      cells.push_back(SampleSizeCell{alpha, power, required_sample_size(mu, sigma, alpha, power)});
  return cells;
}

void write_sample_sizes_tsv(const std::string& path, const std::vector<SampleSizeCell>& cells,
                            double mu, double sigma) {
  std::ostringstream os;
  os << "# version: " << kVersion << "\n";
  os << "# mu: " << fmt(mu) << "\tsigma: " << fmt(sigma) << "\n";
  os << "alpha\tpower\tn\n";
  for (const auto& c : cells)
    os << fmt(c.alpha) << "\t" << fmt(c.power) << "\t" << c.n << "\n";
  atomic_write(path, os.str());
}

void write_sample_sizes_json(const std::string& path, const std::vector<SampleSizeCell>& cells,
                             double mu, double sigma) {
  nlohmann::json doc;
  doc["run"] = nlohmann::json{{"version", kVersion}, {"mu", mu}, {"sigma", sigma}};
  doc["cells"] = nlohmann::json::array();
  for (const auto& c : cells)
    doc["cells"].push_back(nlohmann::json{{"alpha", c.alpha}, {"power", c.power}, {"n", c.n}});
  atomic_write(path, doc.dump(2) + "\n");
}

}  // namespace wincurse
