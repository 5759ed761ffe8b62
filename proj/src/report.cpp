#include "trigsum/report.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"
#include "trigsum/errors.hpp"

namespace trigsum::report {
namespace {

using nlohmann::json;
using cplx = std::complex<double>;

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(to_json(z));
  return out;
}

json to_json(const quad::QuadResult& r) {
  return json{{"value", to_json(r.value)},
              {"abs_error_estimate", r.abs_error_estimate},
              {"panels_used", r.panels_used},
              {"evaluations", r.evaluations},
              {"converged", r.converged}};
}

// nlohmann writes non-finite doubles as null; keep them readable instead.
json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

json finite_or_string(const std::vector<double>& v) {
  json out = json::array();
  for (const double d : v) out.push_back(finite_or_string(d));
  return out;
}

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

std::string short_num(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "table") return Format::table;
  throw InvalidArgument(fmt::format("unknown format '{}' (expected csv, json or table)", s));
}

std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::csv:
      return "csv";
    case Format::json:
      return "json";
    case Format::table:
      return "table";
  }
  return "unknown";
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void write_catalogue(std::ostream& os, const std::vector<corpus::CatalogueEntry>& entries,
                     Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "name,description,support_radius,globally_integrable,condition_class\n";
      for (const auto& e : entries) {
        fmt::print(os, "{},\"{}\",{},{},{}\n", e.name, e.description,
                   e.support_radius ? num(*e.support_radius) : "inf", e.globally_integrable,
                   to_string(e.condition_class));
      }
      return;
    case Format::json: {
      json out = json::array();
      for (const auto& e : entries) {
        out.push_back({{"name", e.name},
                       {"description", e.description},
                       {"support_radius", e.support_radius ? json(*e.support_radius) : json()},
                       {"globally_integrable", e.globally_integrable},
                       {"condition_class", to_string(e.condition_class)}});
      }
      emit_json(os, out);
      return;
    }
    case Format::table:
      fmt::print(os, "{:<20} {:<26} {:>8} {:>5} {}\n", "name", "f(t)", "support", "L1", "class");
      for (const auto& e : entries) {
        fmt::print(os, "{:<20} {:<26} {:>8} {:>5} {}\n", e.name, e.description,
                   e.support_radius ? short_num(*e.support_radius) : "inf",
                   e.globally_integrable ? "yes" : "no", to_string(e.condition_class));
      }
      return;
  }
}

void write_lemma(std::ostream& os, const functionals::LemmaReport& r, Lemma which, Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "T,M,Q\n";
      for (std::size_t i = 0; i < r.T_grid.size(); ++i) {
        fmt::print(os, "{},{},{}\n", num(r.T_grid[i]), num(r.M_values[i]), num(r.Q_values[i]));
      }
      return;
    case Format::json: {
      json out{{"fn_name", r.fn_name},
               {"T_grid", r.T_grid},
               {"M_values", r.M_values},
               {"Q_values", finite_or_string(r.Q_values)},
               {"classification", to_string(r.classification)},
               {"B_hat", r.B_hat},
               {"T1", r.T1}};
      if (which == Lemma::lemma2) out["lemma2_verdict"] = to_string(r.lemma2_verdict);
      if (which == Lemma::lemma3) {
        out["lemma3_verdict"] = to_string(r.lemma3_verdict);
        out["bound_ratio"] = finite_or_string(r.bound_ratio);
      }
      emit_json(os, out);
      return;
    }
    case Format::table:
      fmt::print(os, "function {}  class {}  B_hat {}  T1 {}\n", r.fn_name,
                 to_string(r.classification), short_num(r.B_hat), short_num(r.T1));
      fmt::print(os, "{:>18} {:>18} {:>18}\n", "T", "M(T)", "Q(T)");
      for (std::size_t i = 0; i < r.T_grid.size(); ++i) {
        fmt::print(os, "{:>18} {:>18} {:>18}\n", short_num(r.T_grid[i]), short_num(r.M_values[i]),
                   short_num(r.Q_values[i]));
      }
      if (which == Lemma::lemma2) {
        fmt::print(os, "lemma2: {}\n", to_string(r.lemma2_verdict));
      }
      if (which == Lemma::lemma3) {
        fmt::print(os, "lemma3: {}  bound_ratio {}\n", to_string(r.lemma3_verdict),
                   short_num(r.bound_ratio));
      }
      return;
  }
}

void write_sweep(std::ostream& os, const harness::SweepReport& r, Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "x,h,re_D,im_D,budget\n";
      for (std::size_t k = 0; k < r.h_seq.size(); ++k) {
        for (std::size_t j = 0; j < r.x_grid.size(); ++j) {
          fmt::print(os, "{},{},{},{},{}\n", num(r.x_grid[j]), num(r.h_seq[k]),
                     num(r.D[k][j].real()), num(r.D[k][j].imag()), num(r.budget[k][j]));
        }
      }
      return;
    case Format::json: {
      json D = json::array();
      json budget = json::array();
      for (std::size_t k = 0; k < r.h_seq.size(); ++k) {
        D.push_back(to_json(r.D[k]));
        budget.push_back(finite_or_string(r.budget[k]));
      }
      emit_json(os, json{{"fn_name", r.fn_name},
                         {"x_grid", r.x_grid},
                         {"h_seq", r.h_seq},
                         {"D_matrix", D},
                         {"error_budget_matrix", budget},
                         {"sup_abs_D", finite_or_string(r.sup_abs_D)},
                         {"sup_budget", finite_or_string(r.sup_budget)},
                         {"verdict", to_string(r.verdict)},
                         {"classification", to_string(r.classification)},
                         {"hypothesis_violation", r.hypothesis_violation},
                         {"tol", r.tol},
                         {"notes", r.notes}});
      return;
    }
    case Format::table:
      fmt::print(os, "function {}  class {}  x in [{}, {}] ({} points)\n", r.fn_name,
                 to_string(r.classification), short_num(r.x_grid.front()),
                 short_num(r.x_grid.back()), r.x_grid.size());
      fmt::print(os, "{:>14} {:>18} {:>12}\n", "h", "sup|D|", "budget");
      for (std::size_t k = 0; k < r.h_seq.size(); ++k) {
        fmt::print(os, "{:>14} {:>18} {:>12.3g}\n", short_num(r.h_seq[k]), short_num(r.sup_abs_D[k]),
                   r.sup_budget[k]);
      }
      fmt::print(os, "verdict: {}\n", to_string(r.verdict));
      for (const auto& n : r.notes) fmt::print(os, "note: {}\n", n);
      return;
  }
}

void write_convergence(std::ostream& os, const harness::ConvergenceReport& r, Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "series,param,re,im,abs,budget\n";
      for (std::size_t i = 0; i < r.T_seq.size(); ++i) {
        fmt::print(os, "I,{},{},{},{},{}\n", num(r.T_seq[i]), num(r.I_values[i].real()),
                   num(r.I_values[i].imag()), num(std::abs(r.I_values[i])), num(r.I_error[i]));
      }
      for (std::size_t k = 0; k < r.h_seq.size(); ++k) {
        fmt::print(os, "mean,{},{},{},{},{}\n", num(r.h_seq[k]), num(r.mean_values[k].real()),
                   num(r.mean_values[k].imag()), num(r.abs_D[k]), num(r.D_budget[k]));
      }
      return;
    case Format::json:
      emit_json(os, json{{"fn_name", r.fn_name},
                         {"x0", r.x0},
                         {"ell_hat", to_json(r.ell_hat)},
                         {"stability", r.stability},
                         {"extrapolation_budget", r.extrapolation_budget},
                         {"T_seq", r.T_seq},
                         {"I_values", to_json(r.I_values)},
                         {"I_error", r.I_error},
                         {"h_seq", r.h_seq},
                         {"mean_values", to_json(r.mean_values)},
                         {"mean_residual", finite_or_string(r.mean_residual)},
                         {"abs_D", finite_or_string(r.abs_D)},
                         {"D_budget", finite_or_string(r.D_budget)},
                         {"verdict", to_string(r.verdict)},
                         {"classification", to_string(r.classification)},
                         {"hypothesis_violation", r.hypothesis_violation},
                         {"tol", r.tol},
                         {"notes", r.notes}});
      return;
    case Format::table:
      fmt::print(os, "function {}  x0 {}  class {}\n", r.fn_name, short_num(r.x0),
                 to_string(r.classification));
      fmt::print(os, "ell_hat {} {:+.10g}i  stability {:.3g}\n", short_num(r.ell_hat.real()),
                 r.ell_hat.imag(), r.stability);
      fmt::print(os, "{:>14} {:>18} {:>18} {:>12}\n", "h", "mean", "|D|", "budget");
      for (std::size_t k = 0; k < r.h_seq.size(); ++k) {
        fmt::print(os, "{:>14} {:>18} {:>18} {:>12.3g}\n", short_num(r.h_seq[k]),
                   short_num(r.mean_values[k].real()), short_num(r.abs_D[k]), r.D_budget[k]);
      }
      fmt::print(os, "verdict: {}\n", to_string(r.verdict));
      for (const auto& n : r.notes) fmt::print(os, "note: {}\n", n);
      return;
  }
}

void write_partial(std::ostream& os, std::string_view fn, double x, double T,
                   const quad::QuadResult& r, Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "x,T,re,im,error_estimate\n";
      fmt::print(os, "{},{},{},{},{}\n", num(x), num(T), num(r.value.real()), num(r.value.imag()),
                 num(r.abs_error_estimate));
      return;
    case Format::json:
      emit_json(os, json{{"fn_name", fn}, {"x", x}, {"T", T}, {"result", to_json(r)}});
      return;
    case Format::table:
      fmt::print(os, "I_T(x) for {} at x = {}, T = {}\n  {} {:+.17g}i  (estimate {:.3g})\n", fn,
                 short_num(x), short_num(T), num(r.value.real()), r.value.imag(),
                 r.abs_error_estimate);
      return;
  }
}

void write_mean(std::ostream& os, std::string_view fn, double x, double h,
                const summability::MeanResult& r, Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "x,h,re,im,budget,truncation_T,tail_bound\n";
      fmt::print(os, "{},{},{},{},{},{},{}\n", num(x), num(h), num(r.value.real()),
                 num(r.value.imag()), num(r.budget()), num(r.truncation_T), num(r.tail_bound));
      return;
    case Format::json:
      emit_json(os, json{{"fn_name", fn},
                         {"x", x},
                         {"h", h},
                         {"value", to_json(r.value)},
                         {"budget", r.budget()},
                         {"truncation_T", r.truncation_T},
                         {"tail_bound", r.tail_bound},
                         {"quad", to_json(r.quad)}});
      return;
    case Format::table:
      fmt::print(os,
                 "Lebesgue mean for {} at x = {}, h = {}\n  {} {:+.17g}i  (budget {:.3g}, "
                 "T_max {}, tail {:.3g})\n",
                 fn, short_num(x), short_num(h), num(r.value.real()), r.value.imag(), r.budget(),
                 short_num(r.truncation_T), r.tail_bound);
      return;
  }
}

void write_diff(std::ostream& os, std::string_view fn, double x, double h,
                const summability::DiffResult& r, Format fmt) {
  switch (fmt) {
    case Format::csv:
      os << "x,h,re_D,im_D,budget\n";
      fmt::print(os, "{},{},{},{},{}\n", num(x), num(h), num(r.value.real()), num(r.value.imag()),
                 num(r.budget));
      return;
    case Format::json:
      emit_json(os, json{{"fn_name", fn},
                         {"x", x},
                         {"h", h},
                         {"D", to_json(r.value)},
                         {"budget", r.budget},
                         {"mean", to_json(r.mean.value)},
                         {"truncation_T", r.mean.truncation_T},
                         {"tail_bound", r.mean.tail_bound},
                         {"partial", to_json(r.partial.value)}});
      return;
    case Format::table:
      fmt::print(os, "D(x, h) for {} at x = {}, h = {}\n  {} {:+.17g}i  (budget {:.3g})\n", fn,
                 short_num(x), short_num(h), num(r.value.real()), r.value.imag(), r.budget);
      return;
  }
}

}  // namespace trigsum::report
