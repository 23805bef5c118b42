#include "condfrag/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "condfrag/version.hpp"

namespace condfrag {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string fmt_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string provenance_line(std::uint64_t config_hash) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "# condfrag %s config=%016llx", kVersion,
                  static_cast<unsigned long long>(config_hash));
    return buf;
}

namespace {

std::string wf_header(const Grid& g) {
    std::ostringstream os;
    os << "# condfrag-wf v1 n=" << g.n() << " xmin=" << fmt_full(g.x_min())
       << " xmax=" << fmt_full(g.x_max());
    return os.str();
}

struct WfHeader {
    int n = 0;
    double xmin = 0.0;
    double xmax = 0.0;
};

WfHeader parse_wf_header(const std::string& line, const std::string& path) {
    WfHeader h;
    if (std::sscanf(line.c_str(), "# condfrag-wf v1 n=%d xmin=%lf xmax=%lf", &h.n, &h.xmin,
                    &h.xmax) != 3)
        throw std::runtime_error(path + ": not a condfrag-wf v1 file");
    return h;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

} // namespace

void write_wavefunction(const std::string& path, const RealWavefunction& phi,
                        const std::string& extra_comment) {
    std::ofstream out = open_out(path);
    out << wf_header(phi.grid) << "\n";
    if (!extra_comment.empty()) out << extra_comment << "\n";
    for (int i = 0; i < phi.grid.n(); ++i)
        out << fmt_full(phi.grid.x(i)) << " " << fmt_full(phi.values[static_cast<size_t>(i)])
            << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_wavefunction(const std::string& path, const ComplexWavefunction& phi,
                        const std::string& extra_comment) {
    std::ofstream out = open_out(path);
    out << wf_header(phi.grid) << "\n";
    if (!extra_comment.empty()) out << extra_comment << "\n";
    for (int i = 0; i < phi.grid.n(); ++i) {
        const auto& q = phi.values[static_cast<size_t>(i)];
        out << fmt_full(phi.grid.x(i)) << " " << fmt_full(q.real()) << " " << fmt_full(q.imag())
            << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

template <typename OnRow>
WfHeader read_wf_lines(const std::string& path, OnRow on_row) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const WfHeader h = parse_wf_header(line, path);
    if (h.n < 16) throw std::runtime_error(path + ": bad point count");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        on_row(line, rows);
        ++rows;
    }
    if (rows != h.n) throw std::runtime_error(path + ": row count does not match header");
    return h;
}

} // namespace

RealWavefunction read_wavefunction(const std::string& path) {
    std::vector<double> vals;
    const WfHeader h = read_wf_lines(path, [&](const std::string& line, int) {
        double x, v;
        if (std::sscanf(line.c_str(), "%lf %lf", &x, &v) != 2)
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        vals.push_back(v);
    });
    return RealWavefunction(Grid(h.n, h.xmin, h.xmax), std::move(vals));
}

ComplexWavefunction read_wavefunction_complex(const std::string& path) {
    std::vector<std::complex<double>> vals;
    const WfHeader h = read_wf_lines(path, [&](const std::string& line, int) {
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lf %lf %lf", &x, &re, &im) != 3)
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        vals.emplace_back(re, im);
    });
    return ComplexWavefunction(Grid(h.n, h.xmin, h.xmax), std::move(vals));
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace condfrag
