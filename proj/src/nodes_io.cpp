#include "nodalsl/nodes_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nodalsl/errors.hpp"

namespace nodalsl {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), p);
}

std::string format_double17(double v) {
    std::array<char, 64> buf{};
    auto [p, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf.data(), p);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (!target.parent_path().empty()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw Error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string nodes_to_csv(const NodalDataset& dataset) {
    std::string out = "n,j,x,k_n\n";
    for (const auto& layer : dataset.layers) {
        const std::string k = format_double17(layer.eigen.k);
        for (const auto& node : layer.nodes) {
            out += std::to_string(node.n);
            out += ',';
            out += std::to_string(node.j);
            out += ',';
            out += format_double17(node.x);
            out += ',';
            out += k;
            out += '\n';
        }
    }
    return out;
}

void write_nodes_csv(const std::string& path, const NodalDataset& dataset) {
    write_text_atomic(path, nodes_to_csv(dataset));
}

namespace {

double parse_csv_double(const std::string& cell, const std::string& what, int lineno) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || p != cell.data() + cell.size())
        throw Error("bad " + what + " '" + cell + "' on line " + std::to_string(lineno));
    return v;
}

long parse_csv_int(const std::string& cell, const std::string& what, int lineno) {
    long v = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || p != cell.data() + cell.size())
        throw Error("bad " + what + " '" + cell + "' on line " + std::to_string(lineno));
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

NodalDataset read_nodes_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open nodes file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw Error("empty nodes file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "n,j,x,k_n")
        throw Error("unexpected nodes header '" + line + "' (want n,j,x,k_n)");

    NodalDataset ds;
    DatasetLayer* current = nullptr;
    long prev_n = -1, prev_j = -1;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 4)
            throw Error("expected 4 columns on line " + std::to_string(lineno));
        const long n = parse_csv_int(cells[0], "n", lineno);
        const long j = parse_csv_int(cells[1], "j", lineno);
        const double x = parse_csv_double(cells[2], "x", lineno);
        const double k = parse_csv_double(cells[3], "k_n", lineno);

        if (n < prev_n || (n == prev_n && j <= prev_j))
            throw Error("rows not strictly sorted by (n,j) at line " + std::to_string(lineno));
        if (n != prev_n) {
            ds.layers.emplace_back();
            current = &ds.layers.back();
            current->eigen.n = static_cast<int>(n);
            current->eigen.k = k;
            current->eigen.lambda = k * k;
        } else if (k != current->eigen.k) {
            throw Error("inconsistent k_n within layer n=" + std::to_string(n) + " at line " +
                        std::to_string(lineno));
        }
        current->nodes.push_back({static_cast<int>(n), static_cast<int>(j), x, 0.0});
        prev_n = n;
        prev_j = j;
    }
    if (ds.layers.empty()) throw Error("nodes file '" + path + "' has no records");
    return ds;
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error("empty file '" + path + "'");
    std::vector<std::pair<double, double>> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 2)
            throw Error("expected 2 columns on line " + std::to_string(lineno));
        out.emplace_back(parse_csv_double(cells[0], "x", lineno),
                         parse_csv_double(cells[1], "value", lineno));
    }
    if (out.size() < 4) throw Error("'" + path + "' has fewer than 4 samples");
    return out;
}

std::string xy_to_csv(const std::string& value_name, const std::vector<double>& x,
                      const std::vector<double>& y) {
    std::string out = "x," + value_name + "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += format_double17(x[i]);
        out += ',';
        out += format_double17(y[i]);
        out += '\n';
    }
    return out;
}

}  // namespace nodalsl
