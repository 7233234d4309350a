#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ainf/fixture.hpp"
#include "ainf/homology.hpp"
#include "oracle/naive.hpp"

namespace corpus {

struct Entry {
    std::string file;
    naive::Quiver quiver;
    std::function<void(naive::Algebra&)> extra;
};

inline naive::Algebra naive_algebra(const Entry& e)
{
    auto a = naive::path_algebra(e.quiver);
    if (e.extra)
        e.extra(a);
    return a;
}

// Acyclic fixtures; vertices are numbered in file order.
inline const std::vector<Entry>& acyclic()
{
    static const std::vector<Entry> all = {
        {"point.aq", {1, {}}, nullptr},
        {"a2.aq", {2, {{1, 0, 1}}}, nullptr},
        {"a3.aq", {3, {{1, 0, 1}, {2, 1, 1}}}, nullptr},
        {"a4.aq", {4, {{1, 0, 1}, {2, 1, 1}, {3, 2, 1}}}, nullptr},
        {"ex34.aq", {4, {{1, 0, 1}, {2, 1, 1}, {3, 2, 1}, {3, 0, 2}}},
         [](naive::Algebra& a) { naive::add_op(a, {{0}, {1}, {2}}, {{1, {3}}}); }},
        {"five_valid.aq", {5, {{1, 0, 1}, {2, 1, 1}, {3, 2, 1}, {4, 3, 1}, {3, 0, 2}, {4, 1, 2}}},
         [](naive::Algebra& a) {
             naive::add_op(a, {{0}, {1}, {2}}, {{1, {4}}});
             naive::add_op(a, {{1}, {2}, {3}}, {{1, {5}}});
             naive::add_op(a, {{0, 1}, {2}, {3}}, {{1, {4, 3}}});
             naive::add_op(a, {{0}, {1}, {2, 3}}, {{-1, {0, 5}}});
         }},
        {"star_in.aq", {4, {{1, 0, 1}, {2, 0, 1}, {3, 0, 2}}}, nullptr},
        {"star_out.aq", {4, {{0, 1, 1}, {0, 2, 2}, {0, 3, 1}}}, nullptr},
        {"kronecker.aq", {2, {{1, 0, 1}, {1, 0, 1}}}, nullptr},
    };
    return all;
}

inline std::string path(const std::string& file) { return std::string(AINF_FIXTURE_DIR) + "/" + file; }

inline std::string read(const std::string& file)
{
    std::ifstream in(path(file));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ainf::FixtureDocument load(const std::string& file, std::optional<ainf::Field> field = std::nullopt)
{
    ainf::ParseOptions o;
    o.field = field;
    return ainf::parse_fixture(read(file), o);
}

inline naive::Table to_naive(const ainf::DimTable& t)
{
    naive::Table o;
    for (const auto& [k, n] : t)
        o[k] = static_cast<long>(n);
    return o;
}

}  // namespace corpus
