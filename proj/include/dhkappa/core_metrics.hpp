#pragma once

// Scalar evaluation of Fleiss's kappa and the DiPietro-Hazari kappa.
//
// Determinism: every reduction runs in ascending index order (items outer,
// categories inner). Means over items are formed from exact integer pair
// totals and divided once, so results do not depend on item order at all.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dhkappa/error.hpp"
#include "dhkappa/types.hpp"

namespace dhkappa {

struct PairRates {
    std::vector<double> per_item;
    double mean = 0.0;
};

struct FleissResult {
    double expected = 0.0;                  // sum_j C_j^2
    std::vector<double> observed_per_item;  // R_i of plain agreement
    double observed_mean = 0.0;
    double kappa = 0.0;
};

struct MetricReport {
    std::vector<double> category_proportions;  // C_j
    std::vector<double> label_proportions;     // L_j
    double expected_correct = 0.0;             // C_E
    double expected_incorrect = 0.0;           // C_F
    std::vector<double> observed_correct_per_item;
    std::vector<double> observed_incorrect_per_item;
    double observed_correct_mean = 0.0;    // R bar
    double observed_incorrect_mean = 0.0;  // S bar
    double kappa_dh = 0.0;
    std::optional<FleissResult> fleiss;
};

inline std::vector<double> category_proportions(const AnnotationCounts& counts) {
    const std::size_t m = counts.categories();
    std::vector<std::uint64_t> totals(m, 0);
    for (std::size_t i = 0; i < counts.items(); ++i) {
        auto r = counts.row(i);
        for (std::size_t j = 0; j < m; ++j) totals[j] += r[j];
    }
    const double scale =
        static_cast<double>(counts.annotators()) * static_cast<double>(counts.items());
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = static_cast<double>(totals[j]) / scale;
    return out;
}

inline std::vector<double> label_proportions(const ProposedLabels& labels) {
    std::vector<std::uint64_t> totals(labels.categories(), 0);
    for (std::size_t l : labels.values()) ++totals[l];
    std::vector<double> out(totals.size());
    for (std::size_t j = 0; j < totals.size(); ++j)
        out[j] = static_cast<double>(totals[j]) / static_cast<double>(labels.size());
    return out;
}

namespace detail {
inline void require_same_length(std::span<const double> c, std::span<const double> l) {
    if (c.size() != l.size())
        throw Error(ErrorKind::InvalidArgument,
                    "category proportions have length " + std::to_string(c.size()) +
                        " but label proportions have length " + std::to_string(l.size()));
}

inline double checked_ratio(double numerator, double denominator, const char* what) {
    if (std::abs(denominator) < degeneracy_tolerance) throw Error(ErrorKind::DegenerateDistribution, what);
    return numerator / denominator;
}
}  // namespace detail

/// Chance that two annotators agree with each other and with the proposed label.
inline double expected_correct_agreement(std::span<const double> c, std::span<const double> l) {
    detail::require_same_length(c, l);
    double sum = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) sum += c[j] * c[j] * l[j];
    return sum;
}

/// Chance that two annotators agree with each other on a category other than
/// the proposed label.
inline double expected_incorrect_agreement(std::span<const double> c, std::span<const double> l) {
    detail::require_same_length(c, l);
    double sum = 0.0;
    for (std::size_t proposed = 0; proposed < l.size(); ++proposed) {
        double others = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (j != proposed) others += c[j] * c[j];
        sum += l[proposed] * others;
    }
    return sum;
}

namespace detail {
// Per-item pair rates for a caller-chosen subset of columns; `take(i, j)`
// decides whether column j of item i contributes.
template <typename ColumnFilter>
PairRates pair_rates(const AnnotationCounts& counts, ColumnFilter take) {
    const double all_pairs = static_cast<double>(pair_count(counts.annotators()));
    PairRates out;
    out.per_item.resize(counts.items());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < counts.items(); ++i) {
        auto r = counts.row(i);
        std::uint64_t agreeing = 0;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (take(i, j)) agreeing += pair_count(r[j]);
        out.per_item[i] = static_cast<double>(agreeing) / all_pairs;
        total += agreeing;
    }
    out.mean = static_cast<double>(total) / (all_pairs * static_cast<double>(counts.items()));
    return out;
}
}  // namespace detail

inline PairRates observed_correct_agreement(const AnnotationCounts& counts, const ProposedLabels& labels) {
    require_paired(counts, labels);
    return detail::pair_rates(counts, [&](std::size_t i, std::size_t j) { return j == labels[i]; });
}

inline PairRates observed_incorrect_agreement(const AnnotationCounts& counts, const ProposedLabels& labels) {
    require_paired(counts, labels);
    return detail::pair_rates(counts, [&](std::size_t i, std::size_t j) { return j != labels[i]; });
}

inline FleissResult fleiss_kappa(const AnnotationCounts& counts) {
    FleissResult out;
    for (double c : category_proportions(counts)) out.expected += c * c;
    PairRates observed = detail::pair_rates(counts, [](std::size_t, std::size_t) { return true; });
    out.observed_per_item = std::move(observed.per_item);
    out.observed_mean = observed.mean;
    out.kappa = detail::checked_ratio(out.observed_mean - out.expected, 1.0 - out.expected,
                                      "all annotations fall in a single category");
    return out;
}

/// Computes every DH intermediate and the final statistic. `fleiss` is left
/// empty; use agreement_report() for both.
inline MetricReport dh_kappa(const AnnotationCounts& counts, const ProposedLabels& labels) {
    require_paired(counts, labels);
    MetricReport r;
    r.category_proportions = category_proportions(counts);
    r.label_proportions = label_proportions(labels);
    r.expected_correct = expected_correct_agreement(r.category_proportions, r.label_proportions);
    r.expected_incorrect = expected_incorrect_agreement(r.category_proportions, r.label_proportions);

    PairRates correct = observed_correct_agreement(counts, labels);
    PairRates incorrect = observed_incorrect_agreement(counts, labels);
    r.observed_correct_per_item = std::move(correct.per_item);
    r.observed_incorrect_per_item = std::move(incorrect.per_item);
    r.observed_correct_mean = correct.mean;
    r.observed_incorrect_mean = incorrect.mean;

    const double expected_differential = r.expected_correct - r.expected_incorrect;
    const double observed_differential = r.observed_correct_mean - r.observed_incorrect_mean;
    r.kappa_dh = detail::checked_ratio(observed_differential - expected_differential,
                                       1.0 - expected_differential,
                                       "annotations and labels concentrate on a single category");
    return r;
}

inline MetricReport agreement_report(const AnnotationCounts& counts, const ProposedLabels& labels) {
    MetricReport r = dh_kappa(counts, labels);
    r.fleiss = fleiss_kappa(counts);
    return r;
}

}  // namespace dhkappa
