#include "gossip/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace gossip {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
    throw GraphError(GraphError::Code::Parse, "edge list line " + std::to_string(line) + ": " + msg);
}

bool is_content(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos != std::string::npos && line[pos] != '#';
}

bool parse_index(const std::string& token, std::uint64_t& value) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

AnyGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t n = 0, m = 0;
    bool directed = false;
    bool have_header = false;
    std::vector<std::pair<std::string, std::string>> raw;

    while (std::getline(in, line)) {
        ++line_no;
        if (!is_content(line)) continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string kind, extra;
            if (!(fields >> n >> m >> kind) || (fields >> extra)) parse_error(line_no, "expected header `n m u|d`");
            if (kind != "u" && kind != "d") parse_error(line_no, "graph kind must be `u` or `d`");
            directed = kind == "d";
            have_header = true;
            continue;
        }
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) parse_error(line_no, "expected `a b`");
        raw.emplace_back(a, b);
    }
    if (!have_header) parse_error(line_no, "missing header");
    if (raw.size() != m) {
        parse_error(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(raw.size()));
    }

    bool dense = true;
    for (const auto& [a, b] : raw) {
        std::uint64_t x, y;
        if (!parse_index(a, x) || !parse_index(b, y) || x >= n || y >= n) {
            dense = false;
            break;
        }
    }

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    if (dense) {
        for (const auto& [a, b] : raw) {
            std::uint64_t x = 0, y = 0;
            parse_index(a, x);
            parse_index(b, y);
            edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
        }
    } else {
        std::unordered_map<std::string, NodeId> labels;
        auto id_of = [&](const std::string& label) {
            auto [it, inserted] = labels.try_emplace(label, static_cast<NodeId>(labels.size()));
            if (inserted && labels.size() > n) parse_error(line_no, "more than n distinct node labels");
            return it->second;
        };
        for (const auto& [a, b] : raw) {
            NodeId x = id_of(a);
            NodeId y = id_of(b);
            edges.emplace_back(x, y);
        }
    }

    if (directed) return make_directed(n, edges);
    return make_undirected(n, edges);
}

AnyGraph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError(GraphError::Code::Parse, "cannot open " + path.string());
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const UndirectedGraph& g) {
    out << g.node_count() << ' ' << g.edge_count() << " u\n";
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
    out << g.node_count() << ' ' << g.edge_count() << " d\n";
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list(std::ostream& out, const AnyGraph& g) {
    std::visit([&](const auto& graph) { write_edge_list(out, graph); }, g);
}

void write_edge_list(const std::filesystem::path& path, const AnyGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_edge_list(out, g);
}

std::string to_edge_list(const AnyGraph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

}  // namespace gossip
