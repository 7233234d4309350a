#include <gtest/gtest.h>

#include <random>

#include "ainf/homology.hpp"
#include "ainf/sparse.hpp"
#include "oracle/naive.hpp"

using namespace ainf;

TEST(Scalar, RationalArithmetic)
{
    Field q = Field::rationals();
    Scalar a = q.parse_scalar("3/4"), b = q.parse_scalar("-1/4");
    EXPECT_EQ((a + b).str(), "1/2");
    EXPECT_EQ((a * b).str(), "-3/16");
    EXPECT_EQ((a / b).str(), "-3");
    EXPECT_TRUE((a + b - q.parse_scalar("2/4")).is_zero());
    EXPECT_EQ(q.parse_scalar("6/8"), a);
}

TEST(Scalar, ModularArithmetic)
{
    Field f = Field::parse("fp:7");
    EXPECT_EQ(f.prime, 7u);
    Scalar x = f.from_int(3);
    EXPECT_TRUE((x * x.inverse()).is_one());
    EXPECT_EQ(f.from_int(-1), f.from_int(6));
    EXPECT_EQ(f.parse_scalar("1/2"), f.from_int(4));
    EXPECT_EQ(f.embed(Scalar(10)), f.from_int(3));
}

TEST(Scalar, RejectsBadInput)
{
    Field q = Field::rationals();
    EXPECT_THROW(q.parse_scalar("0.5"), InputError);
    EXPECT_THROW(q.parse_scalar("1/0"), InputError);
    EXPECT_THROW(q.parse_scalar("abc"), InputError);
    EXPECT_THROW(Field::parse("fp:4"), InputError);
    EXPECT_THROW(Field::parse("r"), InputError);
    EXPECT_THROW(Scalar(0).inverse(), std::exception);
}

TEST(Vec, NeverStoresZeros)
{
    Vec v;
    v.add(3, Scalar(2));
    v.add(3, Scalar(-2));
    EXPECT_TRUE(v.empty());
    v.add(1, Scalar(5));
    v.axpy(Scalar(-5), Vec::unit(1));
    EXPECT_TRUE(v.empty());
    Vec w = Vec::unit(0, Scalar(2)) + Vec::unit(4, Scalar(1));
    EXPECT_EQ(w.size(), 2u);
    EXPECT_EQ(w.scaled(Scalar(0)).size(), 0u);
    EXPECT_EQ(w.leading_index(), 0u);
}

namespace {

std::vector<Vec> random_columns(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Field f,
                                std::vector<std::vector<naive::Q>>* dense = nullptr,
                                std::vector<std::vector<std::int64_t>>* dense_p = nullptr)
{
    std::vector<Vec> c(cols);
    if (dense)
        dense->assign(rows, std::vector<naive::Q>(cols));
    if (dense_p)
        dense_p->assign(rows, std::vector<std::int64_t>(cols));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) {
            if (rng() % 3)
                continue;
            long v = static_cast<long>(rng() % 7) - 3;
            c[j].add(i, f.from_int(v));
            if (dense)
                (*dense)[i][j] = v;
            if (dense_p)
                (*dense_p)[i][j] = v;
        }
    return c;
}

}  // namespace

TEST(Rank, AgreesWithDenseOracleOverQ)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        std::vector<std::vector<naive::Q>> d;
        auto cols = random_columns(rng, r, c, Field::rationals(), &d);
        EXPECT_EQ(static_cast<long>(rank(SparseMatrix::from_columns(r, cols))), naive::rank(d));
    }
}

TEST(Rank, AgreesWithDenseOracleModP)
{
    std::mt19937_64 rng(12);
    Field f = Field::modular(101);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        std::vector<std::vector<std::int64_t>> d;
        auto cols = random_columns(rng, r, c, f, nullptr, &d);
        EXPECT_EQ(static_cast<long>(rank(SparseMatrix::from_columns(r, cols))), naive::rank_mod(d, 101));
    }
}

TEST(Rank, DependsOnCharacteristic)
{
    // [[2, 1], [1, 2]] has determinant 3.
    std::vector<Vec> over_q = {Vec::unit(0, Scalar(2)) + Vec::unit(1, Scalar(1)), Vec::unit(0, Scalar(1)) + Vec::unit(1, Scalar(2))};
    EXPECT_EQ(rank(SparseMatrix::from_columns(2, over_q)), 2u);
    Field f3 = Field::modular(3);
    std::vector<Vec> over_f3 = {Vec::unit(0, f3.from_int(2)) + Vec::unit(1, f3.from_int(1)),
                                Vec::unit(0, f3.from_int(1)) + Vec::unit(1, f3.from_int(2))};
    EXPECT_EQ(rank(SparseMatrix::from_columns(2, over_f3)), 1u);
}

TEST(Kernel, BasisIsAnnihilatedAndComplete)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 8;
        auto cols = random_columns(rng, r, c, Field::rationals());
        auto m = SparseMatrix::from_columns(r, cols);
        auto k = kernel_basis(m);
        EXPECT_EQ(k.size(), c - rank(m));
        for (const auto& v : k)
            EXPECT_TRUE(m.apply(v).empty());
        EXPECT_EQ(rank(SparseMatrix::from_columns(c, k)), k.size());
    }
}

TEST(Echelon, ReducesAndTracksSpan)
{
    Echelon e;
    EXPECT_TRUE(e.insert(Vec::unit(0) + Vec::unit(1)));
    EXPECT_TRUE(e.insert(Vec::unit(1, Scalar(2))));
    EXPECT_FALSE(e.insert(Vec::unit(0, Scalar(3))));
    EXPECT_EQ(e.rank(), 2u);
    EXPECT_TRUE(e.contains(Vec::unit(0) - Vec::unit(1)));
    EXPECT_FALSE(e.contains(Vec::unit(2)));
    auto rows = e.rows();
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], Vec::unit(0));
    EXPECT_EQ(rows[1], Vec::unit(1));
}

TEST(Invert, InverseAndSingular)
{
    std::vector<Vec> m = {Vec::unit(0, Scalar(2)) + Vec::unit(1, Scalar(1)), Vec::unit(1, Scalar(1))};
    auto inv = invert_columns(m);
    auto mm = SparseMatrix::from_columns(2, m);
    for (std::size_t j = 0; j < 2; ++j)
        EXPECT_EQ(mm.apply(inv[j]), Vec::unit(j));
    EXPECT_THROW(invert_columns({Vec::unit(0), Vec::unit(0, Scalar(2))}), StructureError);
}

namespace {

// One block: x0, x1 in degree 0, y in degree 1, d x0 = y, d x1 = -y.
ChainComplexView small_complex()
{
    ChainComplexView c;
    c.space = GradedBimodule({"v"});
    c.space.add({0, 0, 0}, "x0");
    c.space.add({0, 0, 0}, "x1");
    c.space.add({0, 0, 1}, "y");
    c.differential = {Vec::unit(2), Vec::unit(2, Scalar(-1)), Vec()};
    return c;
}

}  // namespace

TEST(Homology, SmallComplex)
{
    auto h = homology(small_complex());
    EXPECT_EQ(h.total(), 1u);
    EXPECT_EQ(h.dims.at(0), 1u);
    EXPECT_EQ(h.dims.at(1), 0u);
    ASSERT_EQ(h.representatives.at(0).size(), 1u);
    EXPECT_EQ(h.representatives.at(0)[0], Vec::unit(0) + Vec::unit(1));
    EXPECT_EQ(euler_characteristic(small_complex().space), 1);
    EXPECT_EQ(euler_characteristic(h.table), 1);
}

TEST(Homology, RejectsBadDifferentials)
{
    auto c = small_complex();
    c.differential[2] = Vec::unit(0);  // degree -1
    EXPECT_THROW(check_complex(c), StructureError);
    ChainComplexView sq;
    sq.space = GradedBimodule({"v"});
    sq.space.add({0, 0, 0}, "a");
    sq.space.add({0, 0, 1}, "b");
    sq.space.add({0, 0, 2}, "c");
    sq.differential = {Vec::unit(1), Vec::unit(2), Vec()};
    EXPECT_THROW(check_complex(sq), StructureError);
}

TEST(Homology, MappingConeOfIdentityIsAcyclic)
{
    auto c = small_complex();
    std::vector<Vec> id;
    for (std::size_t i = 0; i < c.size(); ++i)
        id.push_back(Vec::unit(i));
    auto cone = mapping_cone(c, c, id);
    check_complex(cone);
    EXPECT_EQ(homology(cone).total(), 0u);
}

TEST(Homology, WindowOutsideTrustedRangeIsRejected)
{
    auto c = small_complex();
    c.trusted = DegreeWindow{0, 1};
    EXPECT_NO_THROW(homology(c, DegreeWindow{0, 0}));
    c.trusted = DegreeWindow{0, 0};
    EXPECT_THROW(homology(c, DegreeWindow{0, 0}), InputError);
}

TEST(Homology, GroundRing)
{
    auto r = ground_ring_complex({"1", "2", "3"});
    auto h = homology(r);
    EXPECT_EQ(h.table, ground_ring_table(3));
    EXPECT_EQ(h.total(), 3u);
}
