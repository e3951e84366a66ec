// Scores a small hand-built dataset through both computation paths.
#include <iostream>

#include "dhkappa/dhkappa.hpp"

int main() {
    using namespace dhkappa;

    // Three annotators per item, categories {pos, neg}.
    const auto counts = AnnotationCounts::from_rows({{3, 0}, {1, 2}, {2, 1}, {0, 3}});
    const ProposedLabels labels({0, 1, 1, 1}, 2);

    const MetricReport report = agreement_report(counts, labels);
    const MatrixTrace trace = dh_kappa_matrix(counts, labels);

    std::cout << "kappa_dh (scalar path): " << format_number(report.kappa_dh) << "\n"
              << "kappa_dh (matrix path): " << format_number(trace.kappa_dh) << "\n"
              << "fleiss kappa:           " << format_number(report.fleiss->kappa) << "\n";
}
