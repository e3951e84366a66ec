#include <gtest/gtest.h>

#include <random>

#include "dhkappa/core_metrics.hpp"
#include "dhkappa/matrix_path.hpp"
#include "random_dataset.hpp"

namespace dhkappa {
namespace {

constexpr double kTol = 1e-12;

TEST(IndicatorFromLabels, Examples) {
    EXPECT_EQ(indicator_from_labels(ProposedLabels({0, 1}, 2)).entries(),
              (Matrix<std::uint8_t>(2, 2, {1, 0, 0, 1})));
    EXPECT_EQ(indicator_from_labels(ProposedLabels({1, 1}, 2)).entries(),
              (Matrix<std::uint8_t>(2, 2, {0, 1, 0, 1})));
    EXPECT_EQ(indicator_from_labels(ProposedLabels({2, 0}, 3)).entries(),
              (Matrix<std::uint8_t>(2, 3, {0, 0, 1, 1, 0, 0})));
}

TEST(IndicatorFromLabels, RejectsOutOfRange) {
    const std::vector<std::size_t> labels{0, 3};
    EXPECT_THROW(indicator_from_labels(labels, 3), Error);
}

TEST(IndicatorMatrixType, RequiresExactlyOneHotPerRow) {
    EXPECT_THROW(IndicatorMatrix(Matrix<std::uint8_t>(1, 2, {1, 1})), Error);
    EXPECT_THROW(IndicatorMatrix(Matrix<std::uint8_t>(1, 2, {0, 0})), Error);
    EXPECT_THROW(IndicatorMatrix(Matrix<std::uint8_t>(1, 2, {2, 0})), Error);
}

TEST(PairwiseMap, Examples) {
    EXPECT_EQ(pairwise_map(Matrix<int>(1, 2, {3, 0})), (Matrix<double>(1, 2, {3.0, 0.0})));
    EXPECT_EQ(pairwise_map(Matrix<int>(1, 2, {1, 2})), (Matrix<double>(1, 2, {0.0, 1.0})));
    EXPECT_EQ(pairwise_map(Matrix<int>(1, 1, {5})), (Matrix<double>(1, 1, {10.0})));
    EXPECT_THROW(pairwise_map(Matrix<int>(1, 1, {-1})), Error);
}

TEST(MatrixPrimitives, SumsAndShapes) {
    const Matrix<double> m(2, 3, {1, 2, 3, 4, 5, 6});
    EXPECT_EQ(col_sum(m), (Matrix<double>(1, 3, {5, 7, 9})));
    EXPECT_EQ(row_sum(m), (Matrix<double>(2, 1, {6, 15})));
    EXPECT_EQ(transpose(m), (Matrix<double>(3, 2, {1, 4, 2, 5, 3, 6})));
    EXPECT_THROW(hadamard(m, Matrix<double>(3, 2)), Error);
    EXPECT_EQ(subtract(ones<double>(2, 2), identity<double>(2)), (Matrix<double>(2, 2, {0, 1, 1, 0})));
}

TEST(DhKappaMatrix, TraceExample) {
    const auto t = dh_kappa_matrix(AnnotationCounts::from_rows({{3, 0}, {1, 2}}),
                                   indicator_from_labels(ProposedLabels({0, 1}, 2)));
    EXPECT_NEAR(t.kappa_dh, 2.0 / 3.0, kTol);
    EXPECT_NEAR(t.category_row[0], 2.0 / 3.0, kTol);
    EXPECT_NEAR(t.category_row[1], 1.0 / 3.0, kTol);
    EXPECT_NEAR(t.label_row[0], 0.5, kTol);
    EXPECT_NEAR(t.label_row[1], 0.5, kTol);
    EXPECT_NEAR(t.expected_correct, 5.0 / 18.0, kTol);
    EXPECT_NEAR(t.expected_incorrect, 5.0 / 18.0, kTol);
    EXPECT_NEAR(t.observed_correct_mean, 2.0 / 3.0, kTol);
    EXPECT_NEAR(t.observed_incorrect_mean, 0.0, kTol);
    ASSERT_EQ(t.off_diagonal.rows(), 2u);
    EXPECT_EQ(t.off_diagonal(0, 0), 0.0);
    EXPECT_EQ(t.off_diagonal(1, 1), 0.0);
    EXPECT_NEAR(t.off_diagonal(0, 1), 1.0 / 3.0, kTol);
    EXPECT_NEAR(t.off_diagonal(1, 0), 2.0 / 3.0, kTol);
}

TEST(DhKappaMatrix, PerfectAndInverted) {
    EXPECT_NEAR(dh_kappa_matrix(AnnotationCounts::from_rows({{3, 0}, {0, 3}}), ProposedLabels({0, 1}, 2)).kappa_dh,
                1.0, kTol);
    EXPECT_NEAR(dh_kappa_matrix(AnnotationCounts::from_rows({{0, 3}, {3, 0}}), ProposedLabels({0, 1}, 2)).kappa_dh,
                -1.0, kTol);
}

TEST(DhKappaMatrix, DegenerateAndShapeErrors) {
    try {
        dh_kappa_matrix(AnnotationCounts::from_rows({{3, 0}, {3, 0}}), ProposedLabels({0, 0}, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateDistribution);
    }
    EXPECT_THROW(dh_kappa_matrix(AnnotationCounts::from_rows({{3, 0}, {3, 0}}),
                                 indicator_from_labels(ProposedLabels({0}, 2))),
                 Error);
}

void expect_paths_agree(const AnnotationCounts& counts, const ProposedLabels& labels) {
    const MetricReport core = dh_kappa(counts, labels);
    const MatrixTrace t = dh_kappa_matrix(counts, labels);
    for (std::size_t j = 0; j < counts.categories(); ++j) {
        EXPECT_NEAR(t.category_row[j], core.category_proportions[j], kTol);
        EXPECT_NEAR(t.label_row[j], core.label_proportions[j], kTol);
    }
    EXPECT_NEAR(t.expected_correct, core.expected_correct, kTol);
    EXPECT_NEAR(t.expected_incorrect, core.expected_incorrect, kTol);
    EXPECT_NEAR(t.observed_correct_mean, core.observed_correct_mean, kTol);
    EXPECT_NEAR(t.observed_incorrect_mean, core.observed_incorrect_mean, kTol);
    EXPECT_NEAR(t.kappa_dh, core.kappa_dh, kTol);

    double total = 0.0;
    for (double c : core.category_proportions) total += c * c;
    for (std::size_t r = 0; r < counts.categories(); ++r) {
        EXPECT_NEAR(t.off_diagonal_sq_sum[r], total - core.category_proportions[r] * core.category_proportions[r],
                    kTol);
        if (!t.off_diagonal.empty()) {
            EXPECT_EQ(t.off_diagonal(r, r), 0.0);
        }
    }
}

TEST(DhKappaMatrix, AgreesWithScalarPathOnRandomInstances) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        auto inst = testing::random_instance(rng, {.max_items = 40, .max_annotators = 9, .max_categories = 8});
        try {
            expect_paths_agree(aggregate(inst.raw, inst.categories), inst.labels);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DegenerateDistribution);
        }
    }
}

// Past dense_off_diagonal_limit the trace carries no T but the same numbers.
TEST(DhKappaMatrix, WideCategorySetSkipsDenseT) {
    std::mt19937_64 rng(5);
    auto inst = testing::random_instance(
        rng, {.min_items = 200, .max_items = 200, .min_annotators = 6, .max_annotators = 6,
              .min_categories = 70, .max_categories = 70});
    const auto counts = aggregate(inst.raw, inst.categories);
    expect_paths_agree(counts, inst.labels);
    EXPECT_TRUE(dh_kappa_matrix(counts, inst.labels).off_diagonal.empty());
}

}  // namespace
}  // namespace dhkappa
