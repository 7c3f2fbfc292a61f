#ifndef WORDSHIFT_IO_HPP
#define WORDSHIFT_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordshift/automaton.hpp"
#include "wordshift/intpoly.hpp"
#include "wordshift/multidim.hpp"

namespace wordshift {

using nlohmann::json;

inline std::string to_dot(const LabeledGraph& g) {
    std::ostringstream os;
    os << "digraph L {\n";
    for (const LVertex& v : g.vertices) os << "  \"" << v.name() << "\";\n";
    for (const LabeledEdge& e : g.edges)
        os << "  \"" << g.vertices[static_cast<std::size_t>(e.src)].name() << "\" -> \""
           << g.vertices[static_cast<std::size_t>(e.dst)].name() << "\" [label=\"" << e.label
           << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const Digraph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    for (int v = 0; v < g.n; ++v) os << "  \"" << v << "\";\n";
    for (const auto& [s, d] : g.edges)
        os << "  \"" << s << "\" -> \"" << d << "\";\n";
    os << "}\n";
    return os.str();
}

inline json graph_to_json(const LabeledGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const LVertex& v : g.vertices) j["vertices"].push_back(v.name());
    j["edges"] = json::array();
    for (const LabeledEdge& e : g.edges)
        j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
    return j;
}

inline json graph_to_json(const Digraph& g) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < g.n; ++v) j["vertices"].push_back(std::to_string(v));
    j["edges"] = json::array();
    for (const auto& [s, d] : g.edges) j["edges"].push_back({{"src", s}, {"dst", d}});
    return j;
}

/// Reads the common graph JSON; edges may omit labels (unlabeled input).
inline Digraph digraph_from_json(const json& j) {
    Digraph g;
    g.n = static_cast<int>(j.at("vertices").size());
    for (const json& e : j.at("edges")) {
        int s = e.at("src").get<int>(), d = e.at("dst").get<int>();
        if (s < 0 || s >= g.n || d < 0 || d >= g.n)
            throw std::invalid_argument("edge endpoint out of range");
        g.edges.insert({s, d});
    }
    return g;
}

inline json poly_to_json(const IntPoly& p) {
    json coeffs = json::array();
    for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(p.coeff(i).get_str());
    return json{{"coeffs", coeffs}, {"str", p.to_string()}};
}

inline std::string rat_str(const mpq_class& r) {
    mpq_class c = r;
    c.canonicalize();
    return c.get_den() == 1 ? c.get_num().get_str()
                            : c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline json pattern_to_json(const PatternD& p) {
    json cells = json::array();
    for (std::size_t i = 0; i < p.shape.points.size(); ++i)
        cells.push_back({{"pos", p.shape.points[i]}, {"val", p.values[i]}});
    return json{{"d", p.shape.d}, {"q", p.q}, {"cells", cells}};
}

inline PatternD pattern_from_json(const json& j) {
    int d = j.at("d").get<int>(), q = j.at("q").get<int>();
    std::vector<Vec> pts;
    std::vector<int> raw_vals;
    for (const json& c : j.at("cells")) {
        pts.push_back(c.at("pos").get<Vec>());
        raw_vals.push_back(c.at("val").get<int>());
    }
    Shape s(d, pts);
    if (static_cast<std::size_t>(s.size()) != pts.size())
        throw std::invalid_argument("duplicate cells in pattern file");
    std::vector<int> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        vals[static_cast<std::size_t>(s.index_of(pts[i]))] = raw_vals[i];
    return PatternD(q, std::move(s), std::move(vals));
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

}  // namespace wordshift

#endif
