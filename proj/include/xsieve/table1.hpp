#ifndef XSIEVE_TABLE1_HPP
#define XSIEVE_TABLE1_HPP

#include <optional>
#include <string>
#include <vector>

#include "xsieve/sievebounds.hpp"

namespace xsieve {

// the four case-study polynomials, index 0..3
const std::vector<std::string>& table1_polynomials();

struct PaperRow {
  std::string log_x;    // decimal strings as printed
  std::string log_tau;
};
PaperRow table1_paper_value(int index, Regime regime);

// scale on lambda_K that makes the minimal grid X match `target_log_x`
// (monotone bisection); used to isolate the unconditional-column discrepancy
struct SensitivityFit {
  mpq_class scale;              // implied lambda_K multiplier
  mpq_class log_x_at_scale;     // minimal X under the scaled lambda_K
  XInterval log_tau_at_scale;
  XInterval implied_lambda_k;   // scaled value at the polynomial's degree
  XInterval printed_lambda_k;
  bool reproduces_x = false;
  bool reproduces_tau = false;  // within 10 percent on log tau

  explicit SensitivityFit(Prec p)
      : log_tau_at_scale(XInterval::zero(p)), implied_lambda_k(XInterval::zero(p)),
        printed_lambda_k(XInterval::zero(p)) {}
};

struct Table1Row {
  int index = 0;
  Regime regime = Regime::Unconditional;
  std::string poly;
  mpq_class computed_log_x;
  XInterval computed_log_tau;
  PaperRow paper;
  double ratio_log_x = 0;    // computed / paper
  double ratio_log_tau = 0;
  bool x_within = false;     // |ratio-1| <= 0.10
  bool tau_within = false;   // |ratio-1| <= 0.05 (GRH) / 0.10 (unconditional)
  bool grid_certified = false;
  LfResult lf;
  std::optional<SensitivityFit> fit;  // unconditional rows when outside tolerance

  Table1Row(Prec p) : computed_log_tau(XInterval::zero(p)), lf(p) {}
};

Table1Row table1_row(int index, Regime regime, MertensCache& mertens,
                     bool fit_if_needed = true, const GridOptions& grid = {});

std::vector<Table1Row> table1_all(Regime regime, MertensCache& mertens,
                                  bool fit_if_needed = true);

// Corollary 1.2 reproduction pieces
struct SophieGermainReport {
  mpq_class threshold_log_x;      // minimal grid X
  bool threshold_certified = false;
  XInterval lf_ext;               // script-L of {k, 2k+1}
  XInterval log_m11;
  XInterval wrench;               // accelerated product
  XInterval absorption_exponent;  // th/2 + log 16 + log(wrench) - 2 log th
  mpz_class leading;              // 16
  ConditionReport conditions_at_threshold;

  explicit SophieGermainReport(Prec p)
      : lf_ext(XInterval::zero(p)), log_m11(XInterval::zero(p)), wrench(XInterval::zero(p)),
        absorption_exponent(XInterval::zero(p)), conditions_at_threshold(p) {}
};

SophieGermainReport sophie_germain_report(MertensCache& mertens, const GridOptions& grid = {});

}  // namespace xsieve

#endif
