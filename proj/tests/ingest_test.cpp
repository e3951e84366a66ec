#include <gtest/gtest.h>

#include <random>

#include "dhkappa/ingest.hpp"
#include "dhkappa/oracle.hpp"

namespace dhkappa {
namespace {

Error capture(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "expected an error";
    return Error(ErrorKind::InvalidArgument, "none");
}

TEST(ParseCounts, Basic) {
    const auto d = parse_counts("item_id,label,pos,neg\na,pos,3,0\nb,neg,1,2");
    EXPECT_EQ(d.categories.names(), (std::vector<std::string>{"pos", "neg"}));
    EXPECT_EQ(d.counts, AnnotationCounts::from_rows({{3, 0}, {1, 2}}));
    EXPECT_EQ(d.counts.annotators(), 3u);
    EXPECT_EQ(d.labels, ProposedLabels({0, 1}, 2));
    EXPECT_EQ(d.item_ids, (std::vector<std::string>{"a", "b"}));
    EXPECT_TRUE(d.warnings.empty());
}

TEST(ParseCounts, InconsistentRowSumsNameTheLine) {
    const Error e = capture([] { parse_counts("item_id,label,x,y\na,x,2,0\nb,x,1,2"); });
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentAnnotatorCount);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
}

TEST(ParseCounts, UnknownLabel) {
    const Error e = capture([] { parse_counts("item_id,label,x,y\na,z,1,1"); });
    EXPECT_EQ(e.kind(), ErrorKind::UnknownCategory);
    EXPECT_NE(std::string(e.what()).find("'z'"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
}

TEST(ParseCounts, ValueAndShapeErrors) {
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,y\na,x,1.5,1"); }).kind(), ErrorKind::MalformedValue);
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,y\na,x,-1,3"); }).kind(), ErrorKind::MalformedValue);
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,y\na,x,,2"); }).kind(), ErrorKind::MalformedValue);
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,y\na,x,2"); }).kind(), ErrorKind::MalformedRow);
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,y\n"); }).kind(), ErrorKind::EmptyDataset);
    EXPECT_EQ(capture([] { parse_counts(""); }).kind(), ErrorKind::EmptyDataset);
    EXPECT_EQ(capture([] { parse_counts("id,label,x\na,x,2"); }).kind(), ErrorKind::MalformedRow);
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,x\na,x,2,0"); }).kind(), ErrorKind::MalformedRow);
    EXPECT_EQ(capture([] { parse_counts("item_id,label,x,y\na,x,1,0"); }).kind(),
              ErrorKind::InsufficientAnnotators);
}

TEST(ParseCounts, ToleratesCrlfBlankLinesAndPadding) {
    const auto d = parse_counts("item_id, label ,pos,neg\r\n\r\n a ,pos, 3 ,0\r\nb,neg,1,2\r\n\n");
    EXPECT_EQ(d.counts, AnnotationCounts::from_rows({{3, 0}, {1, 2}}));
    EXPECT_EQ(d.item_ids[0], "a");
}

TEST(ParseCounts, DuplicateIdsWarnButCount) {
    const auto d = parse_counts("item_id,label,x,y\na,x,2,0\na,y,0,2\n");
    EXPECT_EQ(d.counts.items(), 2u);
    ASSERT_EQ(d.warnings.size(), 1u);
    EXPECT_NE(d.warnings[0].find("line 3"), std::string::npos);
}

TEST(ParseCounts, LabelForUnusedCategoryIsAccepted) {
    const auto d = parse_counts("item_id,label,x,y,z\na,z,2,0,0\nb,x,1,1,0\n");
    EXPECT_EQ(d.labels[0], 2u);
}

TEST(ParseRaw, SortedUnionOrder) {
    const auto d = parse_raw(
        "item_id,label,annotator_1,annotator_2,annotator_3\na,pos,pos,pos,pos\nb,neg,neg,neg,pos");
    EXPECT_EQ(d.categories.names(), (std::vector<std::string>{"neg", "pos"}));
    EXPECT_EQ(d.raw.annotators(), 3u);
    EXPECT_EQ(d.counts(), AnnotationCounts::from_rows({{0, 3}, {2, 1}}));
    EXPECT_EQ(d.labels, ProposedLabels({1, 0}, 2));
}

TEST(ParseRaw, LabelOnlyCategoryJoinsSet) {
    const auto d = parse_raw("item_id,label,annotator_1,annotator_2\na,zz,x,x\n");
    EXPECT_EQ(d.categories.names(), (std::vector<std::string>{"x", "zz"}));
    EXPECT_EQ(d.counts(), AnnotationCounts::from_rows({{2, 0}}));
}

TEST(ParseRaw, SingleCategoryParsesThenDegenerates) {
    const auto d = parse_raw("item_id,label,annotator_1,annotator_2\na,x,x,x\n");
    EXPECT_EQ(d.categories.size(), 1u);
    EXPECT_EQ(d.counts(), AnnotationCounts::from_rows({{2}}));
}

TEST(ParseRaw, Errors) {
    const Error ragged =
        capture([] { parse_raw("item_id,label,annotator_1,annotator_2,annotator_3\na,x,x,y\n"); });
    EXPECT_EQ(ragged.kind(), ErrorKind::MalformedRow);
    EXPECT_EQ(ragged.line(), 2u);
    EXPECT_EQ(capture([] { parse_raw("item_id,label\na,x\n"); }).kind(), ErrorKind::InsufficientAnnotators);
    EXPECT_EQ(capture([] { parse_raw("item_id,label,annotator_1\na,x,x\n"); }).kind(),
              ErrorKind::InsufficientAnnotators);
    EXPECT_EQ(capture([] { parse_raw("item_id,label,annotator_1,rater\na,x,x,x\n"); }).kind(),
              ErrorKind::MalformedRow);
    EXPECT_EQ(capture([] { parse_raw("item_id,label,annotator_1,annotator_2\na,x,,x\n"); }).kind(),
              ErrorKind::MalformedValue);
    EXPECT_EQ(capture([] { parse_raw("item_id,label,annotator_1,annotator_2\n"); }).kind(),
              ErrorKind::EmptyDataset);
}

// serialize(parse(x)) == x for canonical text, and parse(serialize(d)) == d.
TEST(SerializeCounts, RoundTrip) {
    const std::string canonical = "item_id,label,pos,neg,meh\na,pos,3,0,0\nb,neg,1,2,0\nc,meh,0,1,2\n";
    EXPECT_EQ(serialize_counts(parse_counts(canonical)), canonical);
    EXPECT_EQ(serialize_counts(parse_counts(" item_id,label , pos,neg,meh\r\na,pos,3,0,0\n\nb,neg,1,2,0\r\nc,meh,0,1,2")),
              canonical);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 20, m = 1 + rng() % 5, big_n = 2 + rng() % 6;
        std::vector<std::string> names, ids;
        for (std::size_t j = 0; j < m; ++j) names.push_back("c" + std::to_string(j));
        std::vector<Count> flat(n * m, 0);
        std::vector<std::size_t> labels;
        for (std::size_t i = 0; i < n; ++i) {
            ids.push_back("item" + std::to_string(i));
            labels.push_back(rng() % m);
            for (std::size_t k = 0; k < big_n; ++k) ++flat[i * m + rng() % m];
        }
        const CategorySet cats(names);
        const AnnotationCounts counts(n, m, flat);
        const ProposedLabels lab(labels, m);
        const auto back = parse_counts(serialize_counts(cats, ids, counts, lab));
        EXPECT_EQ(back.counts, counts);
        EXPECT_EQ(back.labels, lab);
        EXPECT_EQ(back.item_ids, ids);
    }
}

TEST(LayoutAgreement, RawAggregatesToEquivalentCounts) {
    const auto raw = parse_raw(
        "item_id,label,annotator_1,annotator_2,annotator_3\n"
        "a,pos,pos,pos,pos\nb,neg,neg,neg,pos\nc,neg,pos,neg,neg\n");
    const auto counts = parse_counts("item_id,label,neg,pos\na,pos,0,3\nb,neg,2,1\nc,neg,2,1\n");
    EXPECT_EQ(raw.counts(), counts.counts);
    EXPECT_EQ(raw.labels, counts.labels);
    EXPECT_EQ(raw.categories.names(), counts.categories.names());
}

TEST(ReadTextFile, MissingFile) {
    EXPECT_EQ(capture([] { read_text_file("/nonexistent/dir/file.csv"); }).kind(), ErrorKind::Io);
}

}  // namespace
}  // namespace dhkappa
