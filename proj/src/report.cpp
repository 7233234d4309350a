#include "ainf/report.hpp"

#include <algorithm>
#include <sstream>

namespace ainf {

namespace {

int vertex_of(const std::vector<std::string>& vs, const std::string& name)
{
    auto it = std::find(vs.begin(), vs.end(), name);
    if (it == vs.end())
        throw InputError("unknown vertex '" + name + "' in report");
    return static_cast<int>(it - vs.begin());
}

}  // namespace

json table_json(const DimTable& t, const std::vector<std::string>& vertices)
{
    json a = json::array();
    for (const auto& [k, n] : t)
        a.push_back({vertices.at(static_cast<std::size_t>(std::get<0>(k))),
                     vertices.at(static_cast<std::size_t>(std::get<1>(k))), std::get<2>(k), n});
    return a;
}

DimTable table_from_json(const json& j, const std::vector<std::string>& vertices)
{
    DimTable t;
    for (const auto& c : j)
        t[{vertex_of(vertices, c.at(0).get<std::string>()), vertex_of(vertices, c.at(1).get<std::string>()),
           c.at(2).get<int>()}] = c.at(3).get<std::size_t>();
    return t;
}

std::string verdict_line(const Verdict& v)
{
    std::string s = v.pass ? "pass" : "fail";
    if (v.checked_up_to > 0)
        s += " (n ≤ " + std::to_string(v.checked_up_to) + ")";
    if (v.precondition_failed)
        s += " [precondition]";
    return s;
}

std::string failure_lines(const Verdict& v, const GradedBimodule& space, std::size_t limit)
{
    std::string out;
    std::size_t k = 0;
    for (const auto& f : v.failures) {
        if (k++ == limit) {
            out += "  ... " + std::to_string(v.failures.size() - limit) + " more\n";
            break;
        }
        std::vector<std::string> parts;
        if (f.arity > 0)
            parts.push_back("n=" + std::to_string(f.arity));
        if (!f.tuple.empty())
            parts.push_back(tuple_str(space, f.tuple));
        if (!f.residual.empty())
            parts.push_back("residual " + f.residual.str(&space.labels()));
        if (!f.message.empty())
            parts.push_back(f.message);
        out += " ";
        for (const auto& p : parts)
            out += " " + p;
        out += "\n";
    }
    return out;
}

json verdict_json(const Verdict& v, const GradedBimodule& space)
{
    json j;
    j["check"] = v.check;
    j["pass"] = v.pass;
    j["precondition_failed"] = v.precondition_failed;
    j["checked_up_to"] = v.checked_up_to;
    j["note"] = v.note;
    json fs = json::array();
    for (const auto& f : v.failures) {
        json x;
        x["arity"] = f.arity;
        x["tuple"] = f.tuple.empty() ? "" : tuple_str(space, f.tuple);
        x["residual"] = f.residual.str(&space.labels());
        x["message"] = f.message;
        fs.push_back(x);
    }
    j["failures"] = fs;
    return j;
}

json report_json(const TheoremReport& r)
{
    json j;
    j["fixture"] = r.fixture;
    j["field"] = r.field;
    j["bound"] = r.bound;
    j["vertices"] = r.vertices;
    j["truncated"] = r.truncated;
    j["verdict"] = r.verdict;
    json st = json::array();
    for (const auto& s : r.stages) {
        json x;
        x["index"] = s.index;
        x["name"] = s.name;
        x["status"] = s.status;
        x["detail"] = s.detail;
        json facts = json::array();
        for (const auto& [k, v] : s.facts)
            facts.push_back({k, v});
        x["facts"] = facts;
        json tables = json::array();
        for (const auto& [k, t] : s.tables)
            tables.push_back({{"name", k}, {"cells", table_json(t, r.vertices)}});
        x["tables"] = tables;
        st.push_back(x);
    }
    j["stages"] = st;
    return j;
}

TheoremReport report_from_json(const json& j)
{
    TheoremReport r;
    r.fixture = j.at("fixture").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.bound = j.at("bound").get<std::string>();
    r.vertices = j.at("vertices").get<std::vector<std::string>>();
    r.truncated = j.at("truncated").get<bool>();
    r.verdict = j.at("verdict").get<std::string>();
    for (const auto& x : j.at("stages")) {
        StageCertificate s;
        s.index = x.at("index").get<int>();
        s.name = x.at("name").get<std::string>();
        s.status = x.at("status").get<std::string>();
        s.detail = x.at("detail").get<std::string>();
        for (const auto& f : x.at("facts"))
            s.facts.emplace_back(f.at(0).get<std::string>(), f.at(1).get<std::string>());
        for (const auto& t : x.at("tables"))
            s.tables.emplace_back(t.at("name").get<std::string>(), table_from_json(t.at("cells"), r.vertices));
        r.stages.push_back(std::move(s));
    }
    return r;
}

std::string report_text(const TheoremReport& r)
{
    std::ostringstream os;
    os << "fixture: " << r.fixture << '\n';
    os << "field: " << r.field << '\n';
    os << "bound: " << r.bound << '\n';
    for (const auto& s : r.stages) {
        os << "stage " << s.index << " " << s.name << ": " << s.status << '\n';
        for (const auto& [k, v] : s.facts)
            os << "  " << k << ": " << v << '\n';
        for (const auto& [k, t] : s.tables)
            os << "  table " << k << ": " << table_str(t, r.vertices) << '\n';
        if (!s.detail.empty())
            os << "  detail: " << s.detail << '\n';
    }
    os << "verdict: " << r.verdict << '\n';
    return os.str();
}

}  // namespace ainf
