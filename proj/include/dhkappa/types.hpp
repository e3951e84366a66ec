#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dhkappa/error.hpp"

namespace dhkappa {

using Count = std::uint32_t;

// Kappa denominators with magnitude below this raise DegenerateDistribution.
inline constexpr double degeneracy_tolerance = 1e-12;

// Number of unordered pairs among k annotators; zero for k < 2.
constexpr std::uint64_t pair_count(std::uint64_t k) noexcept {
    return k < 2 ? 0 : k * (k - 1) / 2;
}

/// Ordered, unique category names. Index i of the set is category c_{i+1}.
class CategorySet {
public:
    CategorySet() = default;

    explicit CategorySet(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw Error(ErrorKind::InvalidArgument, "category set must not be empty");
        index_.reserve(names_.size());
        for (std::size_t j = 0; j < names_.size(); ++j) {
            if (names_[j].empty())
                throw Error(ErrorKind::InvalidArgument,
                            "category " + std::to_string(j + 1) + " has an empty name");
            if (!index_.emplace(names_[j], j).second)
                throw Error(ErrorKind::InvalidArgument, "duplicate category '" + names_[j] + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t index) const { return names_.at(index); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// The n x m matrix of per-item category tallies, every row summing to the
/// same annotator count N >= 2. Stored row-major.
class AnnotationCounts {
public:
    /// Infers N from the first row and checks every other row against it.
    AnnotationCounts(std::size_t items, std::size_t categories, std::vector<Count> flat)
        : items_(items), categories_(categories), data_(std::move(flat)) {
        if (items_ == 0) throw Error(ErrorKind::EmptyDataset, "annotation counts have no items");
        if (categories_ == 0) throw Error(ErrorKind::InvalidArgument, "annotation counts have no categories");
        if (data_.size() != items_ * categories_)
            throw Error(ErrorKind::InvalidArgument,
                        "expected " + std::to_string(items_ * categories_) + " counts, got " +
                            std::to_string(data_.size()));
        for (std::size_t i = 0; i < items_; ++i) {
            std::uint64_t total = 0;
            for (Count c : row(i)) total += c;
            if (i == 0) {
                annotators_ = total;
            } else if (total != annotators_) {
                throw Error(ErrorKind::InconsistentAnnotatorCount,
                            "item " + std::to_string(i + 1) + " has " + std::to_string(total) +
                                " annotations, expected " + std::to_string(annotators_));
            }
        }
        if (annotators_ < 2)
            throw Error(ErrorKind::InsufficientAnnotators,
                        "need at least 2 annotators per item, got " + std::to_string(annotators_));
    }

    static AnnotationCounts from_rows(std::initializer_list<std::initializer_list<Count>> rows) {
        std::size_t m = rows.size() == 0 ? 0 : rows.begin()->size();
        std::vector<Count> flat;
        flat.reserve(rows.size() * m);
        for (const auto& r : rows) {
            if (r.size() != m) throw Error(ErrorKind::InvalidArgument, "ragged count rows");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return AnnotationCounts(rows.size(), m, std::move(flat));
    }

    std::size_t items() const noexcept { return items_; }
    std::size_t categories() const noexcept { return categories_; }
    std::uint64_t annotators() const noexcept { return annotators_; }

    Count at(std::size_t item, std::size_t category) const noexcept {
        return data_[item * categories_ + category];
    }
    std::span<const Count> row(std::size_t item) const noexcept {
        return {data_.data() + item * categories_, categories_};
    }
    std::span<const Count> flat() const noexcept { return data_; }

    friend bool operator==(const AnnotationCounts&, const AnnotationCounts&) = default;

private:
    std::size_t items_;
    std::size_t categories_;
    std::uint64_t annotators_ = 0;
    std::vector<Count> data_;
};

/// One proposed category per item, as 0-based indices into a category set of
/// size m.
class ProposedLabels {
public:
    ProposedLabels(std::vector<std::size_t> labels, std::size_t categories)
        : labels_(std::move(labels)), categories_(categories) {
        if (labels_.empty()) throw Error(ErrorKind::EmptyDataset, "no proposed labels");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] >= categories_)
                throw Error(ErrorKind::InvalidArgument,
                            "label of item " + std::to_string(i + 1) + " is category index " +
                                std::to_string(labels_[i]) + ", outside [0, " +
                                std::to_string(categories_) + ")");
    }

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t categories() const noexcept { return categories_; }
    std::size_t operator[](std::size_t item) const noexcept { return labels_[item]; }
    std::span<const std::size_t> values() const noexcept { return labels_; }

    friend bool operator==(const ProposedLabels&, const ProposedLabels&) = default;

private:
    std::vector<std::size_t> labels_;
    std::size_t categories_;
};

inline void require_paired(const AnnotationCounts& counts, const ProposedLabels& labels) {
    if (counts.items() != labels.size())
        throw Error(ErrorKind::InvalidArgument,
                    "counts have " + std::to_string(counts.items()) + " items but " +
                        std::to_string(labels.size()) + " labels were given");
    if (counts.categories() != labels.categories())
        throw Error(ErrorKind::InvalidArgument,
                    "counts have " + std::to_string(counts.categories()) +
                        " categories but labels index " + std::to_string(labels.categories()));
}

}  // namespace dhkappa
