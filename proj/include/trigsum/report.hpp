#pragma once

// Serialization of reports. CSV renders every double with 17 significant
// digits; JSON uses the shortest representation that round-trips; table is
// for people.

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "trigsum/corpus.hpp"
#include "trigsum/functionals.hpp"
#include "trigsum/harness.hpp"
#include "trigsum/quad.hpp"
#include "trigsum/summability.hpp"

namespace trigsum::report {

enum class Format { csv, json, table };

Format parse_format(std::string_view s);
std::string_view to_string(Format f) noexcept;

/// "{:.17g}" with nan and inf spelled out.
std::string num(double v);

enum class Lemma { none, lemma2, lemma3 };

void write_catalogue(std::ostream& os, const std::vector<corpus::CatalogueEntry>& entries,
                     Format fmt);

/// CSV columns T,M,Q. `which` selects the verdict shown in table/JSON output.
void write_lemma(std::ostream& os, const functionals::LemmaReport& r, Lemma which, Format fmt);

/// CSV long form x,h,re_D,im_D,budget in (h, x) order.
void write_sweep(std::ostream& os, const harness::SweepReport& r, Format fmt);

/// CSV columns series,param,re,im,abs,budget: one "I" row per T (abs = |I_T|,
/// budget = quadrature estimate) then one "mean" row per h (abs = |D|,
/// budget = D budget).
void write_convergence(std::ostream& os, const harness::ConvergenceReport& r, Format fmt);

void write_partial(std::ostream& os, std::string_view fn, double x, double T,
                   const quad::QuadResult& r, Format fmt);
void write_mean(std::ostream& os, std::string_view fn, double x, double h,
                const summability::MeanResult& r, Format fmt);
void write_diff(std::ostream& os, std::string_view fn, double x, double h,
                const summability::DiffResult& r, Format fmt);

}  // namespace trigsum::report
