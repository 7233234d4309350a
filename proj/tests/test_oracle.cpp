#include <gtest/gtest.h>

#include <memory>

#include "ainf/bar_cobar.hpp"
#include "ainf/path_algebra.hpp"
#include "ainf/pipeline.hpp"
#include "corpus.hpp"

using namespace ainf;

namespace {

naive::Table shape(const naive::Quiver& q)
{
    naive::Table t;
    for (int v = 0; v < q.n; ++v)
        t[{v, v, 0}] = 1;
    for (const auto& a : q.arrows)
        ++t[{a.tgt, a.src, 1 - a.deg}];
    return t;
}

}  // namespace

// Frozen values, each recomputed here by the naive oracle.
TEST(Oracle, Ex34FrozenValues)
{
    const auto& e = corpus::acyclic()[4];
    ASSERT_EQ(e.file, "ex34.aq");
    auto a = corpus::naive_algebra(e);
    EXPECT_EQ(naive::by_degree(naive::path_table(e.quiver)), (std::map<int, long>{{0, 4}, {1, 3}, {2, 3}, {3, 1}}));

    auto ba = naive::bar(a);
    ASSERT_TRUE(naive::square_zero(ba.cx));
    EXPECT_EQ(ba.cx.cells.size(), 16u);
    auto u = naive::cobar(ba);
    EXPECT_EQ(u.basis.size(), 23u);
    naive::Complex uc{u.basis, std::vector<naive::Col>(u.basis.size())};
    for (const auto& [k, v] : u.ops)
        if (k.size() == 1)
            uc.d[static_cast<std::size_t>(k[0])] = v;
    ASSERT_TRUE(naive::square_zero(uc));
    auto hu = naive::homology(uc);
    EXPECT_EQ(hu, naive::path_table(e.quiver));
    EXPECT_EQ(naive::by_degree(hu), (std::map<int, long>{{0, 4}, {1, 3}, {2, 3}, {3, 1}}));

    auto bu = naive::bar(u);
    ASSERT_TRUE(naive::square_zero(bu.cx));
    EXPECT_EQ(bu.cx.cells.size(), 32u);
    auto hd = naive::dual_table(naive::homology(bu.cx));
    EXPECT_EQ(naive::total(hd), 8);
    EXPECT_EQ(hd, shape(e.quiver));

    auto tw = naive::twisted(u);
    ASSERT_TRUE(naive::square_zero(tw));
    EXPECT_EQ(tw.cells.size(), 60u);
    naive::Table r{{{0, 0, 0}, 1}, {{1, 1, 0}, 1}, {{2, 2, 0}, 1}, {{3, 3, 0}, 1}};
    EXPECT_EQ(naive::homology(tw), r);
    EXPECT_TRUE(naive::resolution(e.quiver).exact());
}

TEST(Oracle, A2FrozenValues)
{
    const auto& e = corpus::acyclic()[1];
    auto a = corpus::naive_algebra(e);
    auto u = naive::cobar(naive::bar(a));
    naive::Complex uc{u.basis, std::vector<naive::Col>(u.basis.size())};
    for (const auto& [k, v] : u.ops)
        if (k.size() == 1)
            uc.d[static_cast<std::size_t>(k[0])] = v;
    EXPECT_EQ(naive::by_degree(naive::homology(uc)), (std::map<int, long>{{0, 2}, {1, 1}}));
    auto hd = naive::dual_table(naive::homology(naive::bar(u).cx));
    EXPECT_EQ(naive::total(hd), 3);
}

TEST(Oracle, FiveVertexCounterexample)
{
    naive::Quiver q{5, {{1, 0, 1}, {2, 1, 1}, {3, 2, 1}, {4, 3, 1}, {3, 0, 2}, {4, 1, 2}}};
    auto a = naive::path_algebra(q);
    naive::add_op(a, {{0}, {1}, {2}}, {{1, {4}}});
    naive::add_op(a, {{1}, {2}, {3}}, {{1, {5}}});
    EXPECT_FALSE(naive::square_zero(naive::bar(a).cx));
}

class OracleCorpus : public ::testing::TestWithParam<std::size_t> {};

TEST_P(OracleCorpus, LibraryMatchesOracle)
{
    const auto& e = corpus::acyclic()[GetParam()];
    SCOPED_TRACE(e.file);
    auto doc = corpus::load(e.file);
    auto lib = std::make_shared<const AInfinityStructure>(doc.algebra);
    auto na = corpus::naive_algebra(e);

    EXPECT_EQ(corpus::to_naive(lib->space.dim_table()), naive::path_table(e.quiver));

    auto nba = naive::bar(na);
    ASSERT_TRUE(naive::square_zero(nba.cx));
    auto lba = bar_construct(*lib);
    EXPECT_EQ(corpus::to_naive(lba.space.dim_table()), naive::cells_table(nba.cx.cells));
    EXPECT_EQ(corpus::to_naive(homology(lba.complex()).table), naive::homology(nba.cx));

    auto nu = naive::cobar(nba);
    auto lu = std::make_shared<const AInfinityStructure>(cobar_construct(lba));
    EXPECT_EQ(corpus::to_naive(lu->space.dim_table()), naive::cells_table(nu.basis));
    naive::Complex uc{nu.basis, std::vector<naive::Col>(nu.basis.size())};
    for (const auto& [k, v] : nu.ops)
        if (k.size() == 1)
            uc.d[static_cast<std::size_t>(k[0])] = v;
    auto nhu = naive::homology(uc);
    EXPECT_EQ(nhu, naive::path_table(e.quiver));
    EXPECT_EQ(corpus::to_naive(homology(underlying_complex(*lu)).table), nhu);

    auto nbu = naive::bar(nu);
    auto lbu = bar_construct(*lu);
    EXPECT_EQ(corpus::to_naive(lbu.space.dim_table()), naive::cells_table(nbu.cx.cells));
    auto nhd = naive::dual_table(naive::homology(nbu.cx));
    EXPECT_EQ(nhd, shape(e.quiver));
    auto lud = graded_dual_algebra(lbu);
    EXPECT_EQ(corpus::to_naive(homology(underlying_complex(lud)).table), nhd);
    EXPECT_EQ(corpus::to_naive(koszul_dual_shape(doc.quiver)), shape(e.quiver));

    auto ntw = naive::twisted(nu);
    ASSERT_TRUE(naive::square_zero(ntw));
    auto ltw = twisted_tensor(*lu);
    EXPECT_EQ(corpus::to_naive(homology(ltw.complex).table), naive::homology(ntw));

    auto nres = naive::resolution(e.quiver);
    EXPECT_TRUE(nres.exact());
    auto lres = check_resolution(canonical_resolution(doc.quiver));
    EXPECT_EQ(lres.exact, nres.exact());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, OracleCorpus, ::testing::Range<std::size_t>(0, corpus::acyclic().size()));

TEST(Oracle, TwistedTensorOfPathAlgebras)
{
    for (std::size_t i : {1u, 2u, 3u}) {
        const auto& e = corpus::acyclic()[i];
        SCOPED_TRACE(e.file);
        auto na = corpus::naive_algebra(e);
        auto ntw = naive::twisted(na);
        ASSERT_TRUE(naive::square_zero(ntw));
        naive::Table r;
        for (int v = 0; v < e.quiver.n; ++v)
            r[{v, v, 0}] = 1;
        EXPECT_EQ(naive::homology(ntw), r);
        auto doc = corpus::load(e.file);
        EXPECT_EQ(corpus::to_naive(homology(twisted_tensor(doc.algebra).complex).table), r);
    }
}
