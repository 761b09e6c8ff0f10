#include <gtest/gtest.h>

#include <chrono>

#include "rosterlearn/synthetic.hpp"
#include "rosterlearn/templates.hpp"

using namespace rosterlearn;

namespace {

std::string fingerprint(const Corpus& c) {
    std::string out = render_manifest(c.manifest) + render_demand(c.demand);
    for (const auto& r : c.rosters) out += render_roster(r);
    for (const auto& q : c.requests) out += render_requests(q);
    for (const auto& r : c.target_reference) out += render_roster(r);
    for (const auto& q : c.target_requests) out += render_requests(q);
    for (const auto& m : c.manual) out += format_manual(m) + "\n";
    return out;
}

}  // namespace

TEST(Synthetic, SameSeedSameCorpus) {
    EXPECT_EQ(fingerprint(generate_corpus({})), fingerprint(generate_corpus({})));
    SyntheticSpec other;
    other.seed = 8;
    EXPECT_NE(fingerprint(generate_corpus({})), fingerprint(generate_corpus(other)));
}

TEST(Synthetic, FacilitySizedCorpusIsQuick) {
    auto t0 = std::chrono::steady_clock::now();
    auto c = generate_corpus({});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 5.0);
    EXPECT_EQ(c.rosters.size(), 36u);
    EXPECT_EQ(c.target_reference.size(), 12u);
    EXPECT_EQ(c.rosters.front().staff().size(), 20u);
}

TEST(Synthetic, ExceptionsSitOnGatedDaysOnly) {
    auto c = generate_corpus({});
    ASSERT_EQ(c.manifest.exceptions.size(), 5u * 2u);
    std::map<MonthId, std::size_t> idx;
    for (std::size_t i = 0; i < c.rosters.size(); ++i) idx[c.rosters[i].month()] = i;
    for (const auto& cell : c.manifest.exception_cells) {
        const auto i = idx.at(cell.month);
        auto profile = staffing_margin(cell.month, c.requests[i], c.demand, c.rosters[i].staff());
        EXPECT_LT(profile.day(cell.day).margin, Rational(5, 4)) << cell.month.to_string() << " day " << cell.day;
        auto row = *c.rosters[i].index_of(cell.staff);
        EXPECT_EQ(c.rosters[i].at(row, cell.day).code(), cell.to);
    }
}

TEST(Synthetic, NoExceptionsMeansExclusionChangesNothing) {
    SyntheticSpec spec;
    spec.exception_months = 0;
    auto c = generate_corpus(spec);
    EXPECT_TRUE(c.manifest.exceptions.empty());
    EXPECT_TRUE(c.manifest.exception_cells.empty());
    ExtractionParams params;
    auto with = extract_constraints(c.rosters, c.requests, c.demand, params, true);
    auto without = extract_constraints(c.rosters, c.requests, c.demand, params, false);
    EXPECT_EQ(with, without);
}

TEST(Synthetic, BadSpecRejected) {
    SyntheticSpec spec;
    spec.months = 0;
    EXPECT_THROW(generate_corpus(spec), ConfigError);
    spec = {};
    spec.exception_months = 40;
    EXPECT_THROW(generate_corpus(spec), ConfigError);
}
