#include <gtest/gtest.h>

#include "ainf/path_algebra.hpp"
#include "ainf/pipeline.hpp"
#include "ainf/report.hpp"
#include "corpus.hpp"

using namespace ainf;

namespace {

const DimTable& table(const TheoremReport& r, int stage, const std::string& name)
{
    const auto* s = r.stage(stage);
    if (!s)
        throw std::runtime_error("missing stage");
    for (const auto& [n, t] : s->tables)
        if (n == name)
            return t;
    throw std::runtime_error("missing table " + name);
}

TheoremReport run(const std::string& file, PipelineOptions o = {})
{
    auto doc = corpus::load(file);
    o.fixture_name = file;
    if (doc.bound)
        o.path_bound = doc.bound;
    return verify_theorem(doc.algebra, doc.quiver, o);
}

}  // namespace

TEST(CompareDims, IdenticalAndShifted)
{
    DimTable a{{{0, 0, 0}, 1}, {{1, 0, 1}, 2}};
    EXPECT_TRUE(compare_graded_dims(a, a).pass);
    EXPECT_TRUE(compare_graded_dims(a, a).diff.empty());
    DimTable b{{{0, 0, 1}, 1}, {{1, 0, 2}, 2}};
    auto c = compare_graded_dims(a, b);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.diff.size(), 4u);
    HomologyReport h;
    h.table = a;
    EXPECT_TRUE(compare_graded_dims(h, a).pass);
}

TEST(MultiplicativeMatch, PathAlgebras)
{
    for (const char* f : {"a2.aq", "ex34.aq", "kronecker.aq"}) {
        auto doc = corpus::load(f);
        auto kq = path_algebra(doc.quiver);
        auto m = check_multiplicative_match(kq, kq);
        EXPECT_TRUE(m.pass) << f << ": " << m.obstruction;
        EXPECT_EQ(m.correspondence.size(), doc.quiver.vertex_count() + doc.quiver.arrows().size());
    }
}

TEST(MultiplicativeMatch, ZeroProductIsNotKQ)
{
    auto doc = corpus::load("a3.aq");
    auto kq = path_algebra(doc.quiver);
    auto z = kq;
    auto ab = *z.space.find("a*b");
    for (auto it = z.ops[2].begin(); it != z.ops[2].end();)
        it = it->second == Vec::unit(ab) ? z.ops[2].erase(it) : std::next(it);
    auto m = check_multiplicative_match(z, kq);
    EXPECT_FALSE(m.pass);
    EXPECT_FALSE(m.obstruction.empty());
}

TEST(KoszulShape, Formula)
{
    auto doc = corpus::load("ex34.aq");
    auto s = koszul_dual_shape(doc.quiver);
    EXPECT_EQ(total_dim(s), 8u);
    EXPECT_EQ(s.at({0, 3, -1}), 1u);
    EXPECT_EQ(s.at({0, 1, 0}), 1u);
    EXPECT_EQ(s.count({1, 0, 0}), 0u);
}

class PipelineCorpus : public ::testing::TestWithParam<std::size_t> {};

TEST_P(PipelineCorpus, VerifiesTheorem)
{
    const auto& e = corpus::acyclic()[GetParam()];
    SCOPED_TRACE(e.file);
    auto r = run(e.file);
    EXPECT_EQ(r.verdict, "pass");
    ASSERT_EQ(r.stages.size(), 7u);
    for (const auto& s : r.stages)
        EXPECT_EQ(s.status, "pass") << s.name << ": " << s.detail;
    auto kq = naive::path_table(e.quiver);
    EXPECT_EQ(corpus::to_naive(table(r, 1, "H(U)")), kq);
    EXPECT_EQ(table(r, 6, "D(BA')"), table(r, 0, "kQ"));
    auto hu = table(r, 4, "H(U*)");
    EXPECT_EQ(static_cast<long>(total_dim(hu)), e.quiver.n + static_cast<long>(e.quiver.arrows.size()));
    EXPECT_EQ(corpus::to_naive(table(r, 3, "H")), corpus::to_naive(ground_ring_table(e.quiver.n)));
}


TEST(Pipeline, FirstFailureSkipsLaterStages)
{
    for (const char* f : {"five_fail.aq", "ex35.aq"}) {
        auto r = run(f);
        EXPECT_EQ(r.verdict, "fail") << f;
        EXPECT_EQ(r.stage(0)->status, "fail") << f;
        for (int i = 1; i < 7; ++i)
            EXPECT_EQ(r.stage(i)->status, "skipped") << f;
    }
}

TEST(Pipeline, CyclicQuiverIsInconclusive)
{
    PipelineOptions o;
    o.bound = WordBound{2, std::nullopt};
    auto r = run("loop.aq", o);
    EXPECT_TRUE(r.truncated);
    EXPECT_NE(r.verdict, "pass");
    EXPECT_NE(r.verdict, "fail");
    for (const auto& s : r.stages)
        EXPECT_NE(s.status, "fail") << s.name;
    EXPECT_THROW(run("loop.aq"), InputError);
}

TEST(Pipeline, SeedsDoNotChangeTables)
{
    auto base = run("ex34.aq");
    for (std::uint64_t s = 1; s <= 5; ++s) {
        PipelineOptions o;
        o.seed = s;
        auto r = run("ex34.aq", o);
        EXPECT_EQ(r.verdict, "pass");
        EXPECT_EQ(table(r, 5, "A'"), table(base, 5, "A'"));
    }
}

TEST(Report, JsonRoundTrip)
{
    for (const char* f : {"ex34.aq", "five_fail.aq"}) {
        auto r = run(f);
        auto j = report_json(r);
        auto back = report_from_json(j);
        EXPECT_EQ(report_json(back), j) << f;
        EXPECT_EQ(report_text(back), report_text(r)) << f;
        EXPECT_EQ(back.verdict, r.verdict);
        EXPECT_EQ(table(back, 0, "kQ"), table(r, 0, "kQ"));
    }
}

TEST(Report, TableJson)
{
    std::vector<std::string> names{"1", "2"};
    DimTable t{{{1, 0, 1}, 1}, {{0, 0, 0}, 1}};
    auto j = table_json(t, names);
    EXPECT_EQ(j.size(), 2u);
    EXPECT_EQ(table_from_json(j, names), t);
    EXPECT_EQ(table_str(t, names), "(1,1,0)=1 (2,1,1)=1");
    EXPECT_EQ(degree_dims_str(t), "0:1 1:1");
}

TEST_P(PipelineCorpus, FieldIndependent)
{
    const auto& e = corpus::acyclic()[GetParam()];
    auto q = run(e.file);
    auto doc = corpus::load(e.file, Field::modular(32003));
    PipelineOptions o;
    o.fixture_name = e.file;
    auto p = verify_theorem(doc.algebra, doc.quiver, o);
    EXPECT_EQ(p.verdict, q.verdict) << e.file;
    ASSERT_EQ(p.stages.size(), q.stages.size());
    for (std::size_t i = 0; i < p.stages.size(); ++i)
        EXPECT_EQ(p.stages[i].tables, q.stages[i].tables) << e.file << " stage " << i;
}

INSTANTIATE_TEST_SUITE_P(Fixtures, PipelineCorpus, ::testing::Range<std::size_t>(0, corpus::acyclic().size()));
