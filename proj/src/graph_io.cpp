#include "adcast/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "adcast/errors.hpp"

namespace adcast {

namespace {

std::string trimmed(const std::string& line) {
    const auto begin = line.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = line.find_last_not_of(" \t\r\n");
    return line.substr(begin, end - begin + 1);
}

}  // namespace

SocialGraph read_graph(std::istream& in) {
    std::string line;
    int agents = -1;
    Eigen::MatrixXd weights;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = trimmed(line);
        if (text.empty() || text.front() == '#') continue;
        std::istringstream fields(text);
        if (agents < 0) {
            std::string keyword;
            fields >> keyword >> agents;
            if (fields.fail() || keyword != "agents" || agents < 1) {
                throw Error("graph header must be `agents N` (line " +
                            std::to_string(line_number) + ")");
            }
            weights = Eigen::MatrixXd::Zero(agents, agents);
            continue;
        }
        int i = 0;
        int j = 0;
        double w = 0.0;
        fields >> i >> j >> w;
        if (fields.fail() || i < 1 || i > agents || j < 1 || j > agents) {
            throw Error("bad edge line " + std::to_string(line_number));
        }
        weights(i - 1, j - 1) = w;
    }
    if (agents < 1) throw Error("graph file has no `agents N` header");
    return SocialGraph::from_weights(std::move(weights));
}

SocialGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(const SocialGraph& graph, std::ostream& out) {
    const int n = graph.size();
    out << "agents " << n << "\n";
    char buffer[64];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double w = graph.weights(i, j);
            if (w == 0.0) continue;
            std::snprintf(buffer, sizeof buffer, "%.17g", w);
            out << (i + 1) << " " << (j + 1) << " " << buffer << "\n";
        }
    }
}

void write_graph_file(const SocialGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file: " + path);
    write_graph(graph, out);
}

}  // namespace adcast
