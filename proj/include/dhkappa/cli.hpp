#pragma once

// The command-line entry point, kept as a library function so it can be
// driven in-process by tests.
//
// Exit codes: 0 success, 1 input/validation error, 2 degenerate distribution,
// 3 oracle cross-check disagreement.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include "dhkappa/core_metrics.hpp"
#include "dhkappa/error.hpp"
#include "dhkappa/ingest.hpp"
#include "dhkappa/oracle.hpp"
#include "dhkappa/report.hpp"

namespace dhkappa {

enum class Metric { Dh, Fleiss, Both };
enum class OutputFormat { Text, Json };

struct CliConfig {
    std::string input_path;
    Layout layout = Layout::Counts;
    Metric metric = Metric::Both;
    OutputFormat output_format = OutputFormat::Text;
    bool check_oracle = false;
    bool per_item = false;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_degenerate = 2;
inline constexpr int exit_oracle_mismatch = 3;

inline constexpr double oracle_tolerance = 1e-12;

inline AgreementResults compute_results(const AnnotationCounts& counts, const ProposedLabels& labels,
                                        Metric metric) {
    AgreementResults out;
    if (metric != Metric::Fleiss) out.dh = dh_kappa(counts, labels);
    if (metric != Metric::Dh) out.fleiss = fleiss_kappa(counts);
    return out;
}

/// Largest absolute gap between the computed results and the pair-enumeration
/// oracle on the same raw grid.
inline double oracle_max_deviation(const RawAssignments& raw, const ProposedLabels& labels,
                                   const AgreementResults& results) {
    const OracleRates rates = oracle_pair_rates(raw, labels);
    double worst = 0.0;
    auto track = [&worst](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
    if (results.dh) {
        track(results.dh->observed_correct_mean, rates.observed_correct_mean);
        track(results.dh->observed_incorrect_mean, rates.observed_incorrect_mean);
        track(results.dh->kappa_dh, oracle_dh_kappa(raw, labels));
    }
    if (results.fleiss) {
        track(results.fleiss->observed_mean, rates.fleiss_observed_mean);
        track(results.fleiss->kappa, oracle_fleiss_kappa(raw, labels.categories()));
    }
    return worst;
}

inline int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    if (config.check_oracle && config.layout != Layout::Raw) {
        err << "error: --check-oracle requires --layout raw (the oracle needs per-annotator choices)\n";
        return exit_input_error;
    }

    std::optional<CountsDataset> counts_data;
    std::optional<RawDataset> raw_data;
    std::optional<AnnotationCounts> aggregated;
    try {
        const std::string text = read_text_file(config.input_path);
        if (config.layout == Layout::Counts) {
            counts_data = parse_counts(text);
        } else {
            raw_data = parse_raw(text);
            aggregated = raw_data->counts();
        }
    } catch (const Error& e) {
        err << "error: " << config.input_path << ": " << e.what() << "\n";
        return exit_input_error;
    }

    const auto& warnings = counts_data ? counts_data->warnings : raw_data->warnings;
    for (const auto& w : warnings) err << "warning: " << w << "\n";

    ReportContext ctx;
    ctx.categories = counts_data ? &counts_data->categories : &raw_data->categories;
    ctx.item_ids = counts_data ? &counts_data->item_ids : &raw_data->item_ids;
    ctx.counts = counts_data ? &counts_data->counts : &*aggregated;
    ctx.labels = counts_data ? &counts_data->labels : &raw_data->labels;
    ctx.per_item = config.per_item;

    AgreementResults results;
    try {
        results = compute_results(*ctx.counts, *ctx.labels, config.metric);
        if (config.check_oracle) {
            OracleCheck check;
            check.max_abs_diff = oracle_max_deviation(raw_data->raw, raw_data->labels, results);
            check.passed = check.max_abs_diff <= oracle_tolerance;
            ctx.oracle = check;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::DegenerateDistribution ? exit_degenerate : exit_input_error;
    }

    out << (config.output_format == OutputFormat::Json ? render_json(results, ctx) : render_text(results, ctx));

    if (ctx.oracle && !ctx.oracle->passed) {
        err << "error: oracle cross-check differs by " << format_number(ctx.oracle->max_abs_diff)
            << ", above tolerance " << format_number(oracle_tolerance) << "\n";
        return exit_oracle_mismatch;
    }
    return exit_ok;
}

}  // namespace dhkappa
