#include "amos/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace amos {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream iss(line);
    std::string t;
    while (iss >> t) tokens.push_back(t);
    return tokens;
}

long long parse_index(const std::string& tok, int line_no) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw DataError("line " + std::to_string(line_no) + ": bad node index '" + tok + "'");
    return value;
}

double parse_weight(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        const double w = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing");
        return w;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": bad weight '" + tok + "'");
    }
}

struct EdgeAccumulator {
    // keyed by canonical (min, max); remembers the orientation first seen
    std::map<std::pair<long long, long long>, std::pair<bool, double>> seen;
    std::vector<Edge> edges;
    long long max_index = -1;

    void add(long long u, long long v, double w, int line_no) {
        if (u == v)
            throw DataError("line " + std::to_string(line_no) + ": self-loop on node " +
                            std::to_string(u));
        if (u < 0 || v < 0)
            throw DataError("line " + std::to_string(line_no) + ": negative node index");
        if (!(w > 0.0))
            throw DataError("line " + std::to_string(line_no) +
                            ": edge weight must be positive");
        const bool swapped = u > v;
        const auto key = swapped ? std::make_pair(v, u) : std::make_pair(u, v);
        auto it = seen.find(key);
        if (it != seen.end()) {
            const auto& [prev_swapped, prev_w] = it->second;
            if (prev_swapped == swapped)
                throw DataError("line " + std::to_string(line_no) + ": duplicate edge (" +
                                std::to_string(u) + ", " + std::to_string(v) + ")");
            if (prev_w != w)
                throw DataError("line " + std::to_string(line_no) + ": edge (" +
                                std::to_string(u) + ", " + std::to_string(v) +
                                ") repeated with conflicting weights");
            return; // mirrored duplicate with equal weight collapses
        }
        seen.emplace(key, std::make_pair(swapped, w));
        edges.push_back({static_cast<int>(key.first), static_cast<int>(key.second), w});
        max_index = std::max({max_index, u, v});
    }
};

Graph load_edge_list(std::istream& in, Indexing indexing) {
    EdgeAccumulator acc;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto tokens = tokenize(line);
        if (tokens.size() != 2 && tokens.size() != 3)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected 'u v' or 'u v w', got " +
                            std::to_string(tokens.size()) + " fields");
        long long u = parse_index(tokens[0], line_no);
        long long v = parse_index(tokens[1], line_no);
        if (indexing == Indexing::one_based) {
            if (u < 1 || v < 1)
                throw DataError("line " + std::to_string(line_no) +
                                ": index below 1 in one-based input");
            --u;
            --v;
        }
        const double w = tokens.size() == 3 ? parse_weight(tokens[2], line_no) : 1.0;
        acc.add(u, v, w, line_no);
    }
    if (acc.max_index >= std::numeric_limits<int>::max())
        throw DataError("node index too large");
    return Graph::from_edges(static_cast<int>(acc.max_index + 1), std::move(acc.edges));
}

Graph load_matrix_market(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw DataError("empty MatrixMarket file");
    ++line_no;
    auto header = tokenize(line);
    for (auto& t : header)
        std::transform(t.begin(), t.end(), t.begin(),
                       [](unsigned char c) { return std::tolower(c); });
    if (header.size() < 5 || header[0] != "%%matrixmarket" || header[1] != "matrix")
        throw DataError("line 1: not a MatrixMarket matrix header");
    if (header[2] != "coordinate")
        throw DataError("line 1: only 'coordinate' MatrixMarket format is supported");
    const std::string& field = header[3];
    if (field != "real" && field != "integer" && field != "pattern")
        throw DataError("line 1: unsupported MatrixMarket field '" + field + "'");
    if (header[4] != "symmetric")
        throw DataError("line 1: MatrixMarket input must carry the 'symmetric' qualifier");
    const bool pattern = field == "pattern";

    long long rows = 0, cols = 0, nnz = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        const auto tokens = tokenize(line);
        if (tokens.size() != 3)
            throw DataError("line " + std::to_string(line_no) + ": bad size line");
        rows = parse_index(tokens[0], line_no);
        cols = parse_index(tokens[1], line_no);
        nnz = parse_index(tokens[2], line_no);
        break;
    }
    if (rows <= 0 || rows != cols)
        throw DataError("MatrixMarket size must be square and positive");

    EdgeAccumulator acc;
    long long entries = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        const auto tokens = tokenize(line);
        const std::size_t expected = pattern ? 2 : 3;
        if (tokens.size() != expected)
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(expected) + " fields");
        const long long i = parse_index(tokens[0], line_no);
        const long long j = parse_index(tokens[1], line_no);
        if (i < 1 || j < 1 || i > rows || j > cols)
            throw DataError("line " + std::to_string(line_no) + ": index out of range");
        const double w = pattern ? 1.0 : parse_weight(tokens[2], line_no);
        acc.add(i - 1, j - 1, w, line_no);
        ++entries;
    }
    if (entries != nnz)
        throw DataError("MatrixMarket entry count " + std::to_string(entries) +
                        " does not match declared " + std::to_string(nnz));
    return Graph::from_edges(static_cast<int>(rows), std::move(acc.edges));
}

} // namespace

Graph load_graph(std::istream& in, GraphFormat format, Indexing indexing) {
    switch (format) {
    case GraphFormat::edge_list:
        return load_edge_list(in, indexing);
    case GraphFormat::matrix_market:
        return load_matrix_market(in);
    }
    throw DataError("unknown graph format");
}

Graph load_graph_file(const std::string& path, GraphFormat format, Indexing indexing) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return load_graph(in, format, indexing);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    bool unweighted = true;
    for (const auto& e : g.edges())
        if (e.w != 1.0) {
            unweighted = false;
            break;
        }
    out.precision(17);
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (!unweighted) out << ' ' << e.w;
        out << '\n';
    }
}

std::vector<int> load_labels(std::istream& in) {
    std::vector<int> labels;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        labels.push_back(static_cast<int>(parse_index(tokenize(line).at(0), line_no)));
    }
    return labels;
}

std::vector<int> load_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return load_labels(in);
}

void write_labels(std::ostream& out, const std::vector<int>& labels) {
    for (int l : labels) out << l << '\n';
}

Graph binarize(const Graph& g) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w = 1.0;
    return Graph::from_edges(g.node_count(), std::move(edges));
}

} // namespace amos
