#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wincurse/chain.hpp"
#include "wincurse/context.hpp"
#include "wincurse/simulation.hpp"

namespace wincurse {

inline constexpr const char* kVersion = "0.1.0";

enum class PConvention { one_sided, two_sided };
enum class EffectScale { log_or, coefficient };

const char* to_string(PConvention c);
const char* to_string(EffectScale s);
PConvention p_convention_from_string(const std::string& s);
EffectScale effect_scale_from_string(const std::string& s);

// One input line of a summary-statistics file.
struct SummaryRecord {
  std::string snp_id;
  std::optional<double> p_value;      // reported significance
  double beta_hat = 0.0;              // risk-oriented effect, > 0
  std::optional<double> se;           // standard error, wins over p_value
  double alpha = 0.05;                // per-record threshold
  PConvention p_convention = PConvention::one_sided;
  EffectScale effect_scale = EffectScale::log_or;
  std::string follow_up;              // free-form echo column (optional)
  std::size_t source_line = 0;        // 1-based input line, 0 if synthetic
};

// Raised when a record's statistic does not clear its own threshold.
struct NotSignificantError : std::runtime_error {
  explicit NotSignificantError(const std::string& snp);
};

// (t_obs, c, se) from a record: t = beta/se when se is given, otherwise
// from the p-value under the record's convention with se = beta/t.
TestContext ingest(const SummaryRecord& record);

// Inverse of ingest's p path: the p-value a statistic reports under a
// convention (upper tail, doubled for two-sided).
double emit_p_value(double t_obs, PConvention convention);

// All estimator output for one record, on the effect scale.
struct ReportRow {
  SummaryRecord record;
  double t_obs = 0.0;
  double crit = 0.0;
  double naive = 0.0;
  double mle = 0.0;
  bool mle_clamped = false;
  double mle_ci_low = 0.0, mle_ci_high = 0.0;
  double b_l = 0.0, b_l_hpd_low = 0.0, b_l_hpd_high = 0.0;
  double b_h = 0.0, b_h_hpd_low = 0.0, b_h_hpd_high = 0.0;
  double b_m = 0.0;
  double b_unif = 0.0;
  double b_bma = 0.0;
  double r_hat = 0.0;
  bool bridge_converged = false;
  std::vector<std::pair<std::string, double>> extra;  // custom-prior columns
};

struct CorrectOptions {
  ChainConfig chain;                       // seed unused; per-record seeds derived
  double u_max = 2.0;
  std::uint64_t base_seed = 1;
  double ci_level = 0.95;
  double hpd_mass = 0.95;
  std::optional<double> alpha_override;
  std::optional<PConvention> convention_override;
  std::vector<SpikeSlabPrior> extra_priors;
  int threads = 0;
};

// Every estimator for one record; record i uses seeds base_seed + i.
ReportRow correct_record(const SummaryRecord& record, const CorrectOptions& opt,
                         std::uint64_t record_seed);

struct SkippedRecord {
  std::size_t line = 0;        // 1-based input line
  std::string snp_id;
  std::string reason;
};

struct CorrectRun {
  std::vector<ReportRow> rows;       // input order
  std::vector<SkippedRecord> skipped;
};

// Concurrent, order-preserving sweep over records; non-significant or
// malformed records are collected, not fatal.
CorrectRun correct_records(const std::vector<SummaryRecord>& records,
                           const CorrectOptions& opt);

// ---- files ----

struct ParsedInput {
  std::vector<SummaryRecord> records;
  std::vector<SkippedRecord> malformed;  // bad lines, with line numbers
};

// Headered TSV: snp_id, p_value, beta_hat, se, alpha, p_convention,
// effect_scale, optional follow_up; '#' lines ignored; empty p_value or se
// allowed (one required).
ParsedInput read_summary_tsv(const std::string& path);

// Atomic writes (temp file + rename). OR-scale columns are exp() of the
// effect columns, emitted only for log_or records.
void write_report_tsv(const std::string& path, const CorrectRun& run,
                      const CorrectOptions& opt);
void write_report_json(const std::string& path, const CorrectRun& run,
                       const CorrectOptions& opt);

void write_summary_tables_tsv(const std::string& path, const std::vector<SummaryTable>& tables,
                              const SimulationOptions& opt);
void write_summary_tables_json(const std::string& path, const std::vector<SummaryTable>& tables,
                               const SimulationOptions& opt);

// Sample-size table (alpha x power grid).
struct SampleSizeCell {
  double alpha = 0.0;
  double power = 0.0;
  std::int64_t n = 0;
};
std::vector<SampleSizeCell> sample_size_table(double mu, double sigma,
                                              const std::vector<double>& alphas,
                                              const std::vector<double>& powers);
void write_sample_sizes_tsv(const std::string& path, const std::vector<SampleSizeCell>& cells,
                            double mu, double sigma);
void write_sample_sizes_json(const std::string& path, const std::vector<SampleSizeCell>& cells,
                             double mu, double sigma);

}  // namespace wincurse
