#include "blowup/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

void put_le(std::ostream& os, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
}

double get_le(std::istream& is) {
    char buf[8];
    if (!is.read(buf, 8)) throw std::runtime_error("snapshot: truncated binary payload");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string snapshot_header(const Grid& g, int components) {
    std::ostringstream os;
    os << std::setprecision(17) << g.dim;
    for (int a = 0; a < g.dim; ++a) os << ' ' << g.n[a];
    for (int a = 0; a < g.dim; ++a) os << ' ' << g.h[a];
    for (int a = 0; a < g.dim; ++a) os << ' ' << g.origin[a];
    os << ' ' << components;
    return os.str();
}

void write_snapshot(const std::filesystem::path& path, const std::vector<const Field*>& fields,
                    SnapshotFormat format) {
    if (fields.empty()) throw std::invalid_argument("snapshot: nothing to write");
    const Grid& g = fields.front()->grid();
    int ncomp = 0;
    for (const Field* f : fields) {
        if (!f->grid().same_shape(g)) throw std::invalid_argument("snapshot: fields on different grids");
        ncomp += f->components();
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path.string());
    os << snapshot_header(g, ncomp) << '\n';
    if (format == SnapshotFormat::csv) os << std::setprecision(17);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        bool first = true;
        for (const Field* f : fields)
            for (int c = 0; c < f->components(); ++c) {
                if (format == SnapshotFormat::binary) {
                    put_le(os, (*f)(c, idx));
                } else {
                    if (!first) os << ',';
                    os << (*f)(c, idx);
                    first = false;
                }
            }
        if (format == SnapshotFormat::csv) os << '\n';
    }
    if (!os) throw std::runtime_error("snapshot: write failed for " + path.string());
}

std::vector<Field> read_snapshot(const std::filesystem::path& path, bool periodic) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
    std::string line;
    std::getline(is, line);
    std::istringstream hs(line);
    Grid g;
    hs >> g.dim;
    if (!hs || g.dim < 1 || g.dim > 3) throw std::runtime_error("snapshot: bad header in " + path.string());
    for (int a = 0; a < g.dim; ++a) hs >> g.n[a];
    for (int a = 0; a < g.dim; ++a) hs >> g.h[a];
    for (int a = 0; a < g.dim; ++a) hs >> g.origin[a];
    for (int a = 0; a < 3; ++a) g.periodic[a] = a < g.dim ? periodic : true;
    int ncomp = 0;
    hs >> ncomp;
    if (!hs || ncomp < 1) throw std::runtime_error("snapshot: bad header in " + path.string());
    g.validate();

    std::vector<Field> out(ncomp, Field::scalar(g));
    if (path.extension() == ".bin") {
        for (std::size_t idx = 0; idx < g.size(); ++idx)
            for (int c = 0; c < ncomp; ++c) out[c][idx] = get_le(is);
    } else {
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            if (!std::getline(is, line)) throw std::runtime_error("snapshot: truncated CSV payload");
            std::istringstream ls(line);
            for (int c = 0; c < ncomp; ++c) {
                std::string cell;
                if (!std::getline(ls, cell, ',')) throw std::runtime_error("snapshot: short CSV row");
                out[c][idx] = std::stod(cell);
            }
        }
    }
    return out;
}

}  // namespace blowup
