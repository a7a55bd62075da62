#include "bitprobe/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace bitprobe {

Graph read_graph_text(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("graph file: missing header");
    if (n < 0 || m < 0) throw std::runtime_error("graph file: negative counts");
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw std::runtime_error("graph file: truncated edge list");
        if (!(0 <= u && u < v && v < n)) throw std::runtime_error("graph file: bad edge endpoints");
        if (i > 0 && !(edges.back() < Edge{u, v})) throw std::runtime_error("graph file: edges not sorted");
        edges.push_back({u, v});
    }
    return make_graph(n, std::move(edges));
}

void write_graph_text(const Graph& g, std::ostream& out) {
    out << g.vertex_count << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges) out << e.u << ' ' << e.v << '\n';
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph_text(in);
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    write_graph_text(g, out);
}

}  // namespace bitprobe
