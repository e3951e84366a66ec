#pragma once

// Brute-force reference computations over raw per-annotator choices.
//
// Nothing in here uses a binomial coefficient: agreement rates come from
// literally walking every unordered annotator pair, and the chance terms are
// recomputed from the raw grid rather than from AnnotationCounts. Cost is
// O(n * N^2 + m^2), so keep inputs small.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dhkappa/error.hpp"
#include "dhkappa/types.hpp"

namespace dhkappa {

/// n x N grid: entry (i, k) is the 0-based category annotator k chose for item i.
class RawAssignments {
public:
    RawAssignments(std::size_t items, std::size_t annotators, std::vector<std::size_t> choices)
        : items_(items), annotators_(annotators), choices_(std::move(choices)) {
        if (items_ == 0) throw Error(ErrorKind::EmptyDataset, "raw assignments have no items");
        if (annotators_ == 0)
            throw Error(ErrorKind::InsufficientAnnotators, "raw assignments have no annotators");
        if (choices_.size() != items_ * annotators_)
            throw Error(ErrorKind::InvalidArgument,
                        "expected " + std::to_string(items_ * annotators_) + " choices, got " +
                            std::to_string(choices_.size()));
    }

    static RawAssignments from_rows(std::initializer_list<std::initializer_list<std::size_t>> rows) {
        std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
        std::vector<std::size_t> flat;
        for (const auto& r : rows) {
            if (r.size() != width) throw Error(ErrorKind::MalformedRow, "ragged raw rows");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return RawAssignments(rows.size(), width, std::move(flat));
    }

    std::size_t items() const noexcept { return items_; }
    std::size_t annotators() const noexcept { return annotators_; }
    std::size_t at(std::size_t item, std::size_t annotator) const noexcept {
        return choices_[item * annotators_ + annotator];
    }
    std::span<const std::size_t> row(std::size_t item) const noexcept {
        return {choices_.data() + item * annotators_, annotators_};
    }

private:
    std::size_t items_;
    std::size_t annotators_;
    std::vector<std::size_t> choices_;
};

inline AnnotationCounts aggregate(const RawAssignments& raw, std::size_t categories) {
    std::vector<Count> flat(raw.items() * categories, 0);
    for (std::size_t i = 0; i < raw.items(); ++i) {
        for (std::size_t k = 0; k < raw.annotators(); ++k) {
            std::size_t c = raw.at(i, k);
            if (c >= categories)
                throw Error(ErrorKind::InvalidArgument,
                            "item " + std::to_string(i + 1) + ", annotator " + std::to_string(k + 1) +
                                " chose category index " + std::to_string(c) + ", outside [0, " +
                                std::to_string(categories) + ")");
            ++flat[i * categories + c];
        }
    }
    return AnnotationCounts(raw.items(), categories, std::move(flat));
}

struct OracleRates {
    double observed_correct_mean = 0.0;    // R bar
    double observed_incorrect_mean = 0.0;  // S bar
    double fleiss_observed_mean = 0.0;
};

namespace detail {

inline void require_oracle_inputs(const RawAssignments& raw, const ProposedLabels& labels) {
    if (raw.annotators() < 2)
        throw Error(ErrorKind::InsufficientAnnotators,
                    "pair enumeration needs at least 2 annotators, got " +
                        std::to_string(raw.annotators()));
    if (raw.items() != labels.size())
        throw Error(ErrorKind::InvalidArgument, "raw assignments and labels differ in item count");
    for (std::size_t i = 0; i < raw.items(); ++i)
        for (std::size_t c : raw.row(i))
            if (c >= labels.categories())
                throw Error(ErrorKind::InvalidArgument,
                            "item " + std::to_string(i + 1) + " has a choice outside the category set");
}

// Share of all n*N annotations falling in each category, tallied from the grid.
inline std::vector<double> raw_category_shares(const RawAssignments& raw, std::size_t categories) {
    std::vector<double> hits(categories, 0.0);
    for (std::size_t i = 0; i < raw.items(); ++i)
        for (std::size_t k = 0; k < raw.annotators(); ++k) hits[raw.at(i, k)] += 1.0;
    const double total = static_cast<double>(raw.items() * raw.annotators());
    for (double& h : hits) h /= total;
    return hits;
}

inline std::vector<double> raw_label_shares(const ProposedLabels& labels) {
    std::vector<double> hits(labels.categories(), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) hits[labels[i]] += 1.0;
    for (double& h : hits) h /= static_cast<double>(labels.size());
    return hits;
}

}  // namespace detail

/// Walks every unordered annotator pair of every item.
inline OracleRates oracle_pair_rates(const RawAssignments& raw, const ProposedLabels& labels) {
    detail::require_oracle_inputs(raw, labels);
    const std::size_t big_n = raw.annotators();

    double correct_sum = 0.0, incorrect_sum = 0.0, agree_sum = 0.0;
    for (std::size_t i = 0; i < raw.items(); ++i) {
        std::size_t pairs = 0, correct = 0, incorrect = 0, agree = 0;
        for (std::size_t a = 0; a < big_n; ++a) {
            for (std::size_t b = a + 1; b < big_n; ++b) {
                ++pairs;
                if (raw.at(i, a) != raw.at(i, b)) continue;
                ++agree;
                if (raw.at(i, a) == labels[i])
                    ++correct;
                else
                    ++incorrect;
            }
        }
        correct_sum += static_cast<double>(correct) / static_cast<double>(pairs);
        incorrect_sum += static_cast<double>(incorrect) / static_cast<double>(pairs);
        agree_sum += static_cast<double>(agree) / static_cast<double>(pairs);
    }
    const double n = static_cast<double>(raw.items());
    return {correct_sum / n, incorrect_sum / n, agree_sum / n};
}

inline double oracle_dh_kappa(const RawAssignments& raw, const ProposedLabels& labels) {
    const OracleRates rates = oracle_pair_rates(raw, labels);
    const std::size_t m = labels.categories();
    const auto shares = detail::raw_category_shares(raw, m);
    const auto label_shares = detail::raw_label_shares(labels);

    double chance_correct = 0.0, chance_incorrect = 0.0;
    for (std::size_t j = 0; j < m; ++j) chance_correct += shares[j] * shares[j] * label_shares[j];
    for (std::size_t proposed = 0; proposed < m; ++proposed) {
        double others = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            if (j != proposed) others += shares[j] * shares[j];
        chance_incorrect += label_shares[proposed] * others;
    }

    const double expected_differential = chance_correct - chance_incorrect;
    const double denominator = 1.0 - expected_differential;
    if (std::abs(denominator) < degeneracy_tolerance)
        throw Error(ErrorKind::DegenerateDistribution,
                    "annotations and labels concentrate on a single category");
    const double observed_differential = rates.observed_correct_mean - rates.observed_incorrect_mean;
    return (observed_differential - expected_differential) / denominator;
}

inline double oracle_fleiss_kappa(const RawAssignments& raw, std::size_t categories) {
    if (raw.annotators() < 2)
        throw Error(ErrorKind::InsufficientAnnotators, "pair enumeration needs at least 2 annotators");
    // Labels play no part in plain agreement; any valid labelling will do.
    const ProposedLabels placeholder(std::vector<std::size_t>(raw.items(), 0), categories);
    const OracleRates rates = oracle_pair_rates(raw, placeholder);
    const auto shares = detail::raw_category_shares(raw, categories);
    double expected = 0.0;
    for (double s : shares) expected += s * s;
    if (std::abs(1.0 - expected) < degeneracy_tolerance)
        throw Error(ErrorKind::DegenerateDistribution, "all annotations fall in a single category");
    return (rates.fleiss_observed_mean - expected) / (1.0 - expected);
}

}  // namespace dhkappa
