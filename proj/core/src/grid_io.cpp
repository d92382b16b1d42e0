#include "wavequanta/grid_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wavequanta/error.hpp"

namespace wq::io {

namespace {

constexpr std::array<char, 8> kMagic{'W', 'Q', 'G', 'R', 'I', 'D', '1', '\0'};

template <class T>
void put(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(bytes.data(), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    std::array<char, sizeof(T)> bytes;
    if (!in.read(bytes.data(), sizeof(T))) throw ValidationError("grid file: truncated input");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

std::uint64_t point_count(const std::vector<std::uint64_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::uint64_t{1}, std::multiplies<>());
}

GridFile grid3_header(const em::Grid3& g, std::uint32_t ncomp, double hbar) {
    GridFile f;
    f.dims = {g.n[0], g.n[1], g.n[2]};
    f.ncomp = ncomp;
    f.origin = {0.0, 0.0, 0.0};
    f.spacing = {g.spacing(0), g.spacing(1), g.spacing(2)};
    f.hbar = hbar;
    return f;
}

} // namespace

void GridFile::validate() const {
    if (dims.empty()) throw ValidationError("grid file: rank must be at least 1");
    if (origin.size() != dims.size() || spacing.size() != dims.size())
        throw ValidationError("grid file: origin and spacing must have one entry per axis");
    if (ncomp < 1) throw ValidationError("grid file: ncomp must be at least 1");
    if (data.size() != point_count(dims) * ncomp) throw ValidationError("grid file: data size disagrees with dims");
}

void write_grid(std::ostream& out, const GridFile& grid) {
    grid.validate();
    out.write(kMagic.data(), kMagic.size());
    put(out, static_cast<std::uint32_t>(grid.dims.size()));
    put(out, grid.ncomp);
    for (auto d : grid.dims) put(out, d);
    for (double o : grid.origin) put(out, o);
    for (double s : grid.spacing) put(out, s);
    put(out, grid.hbar);
    for (double v : grid.data) put(out, v);
}

GridFile read_grid(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw ValidationError("grid file: bad magic");
    GridFile g;
    const auto rank = get<std::uint32_t>(in);
    if (rank == 0 || rank > 16) throw ValidationError("grid file: unsupported rank");
    g.ncomp = get<std::uint32_t>(in);
    for (std::uint32_t a = 0; a < rank; ++a) g.dims.push_back(get<std::uint64_t>(in));
    for (std::uint32_t a = 0; a < rank; ++a) g.origin.push_back(get<double>(in));
    for (std::uint32_t a = 0; a < rank; ++a) g.spacing.push_back(get<double>(in));
    g.hbar = get<double>(in);
    const std::uint64_t count = point_count(g.dims) * g.ncomp;
    if (count > (std::uint64_t{1} << 34)) throw ValidationError("grid file: implausibly large");
    // grow as values arrive so a corrupt header cannot force a huge allocation
    g.data.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, std::uint64_t{1} << 20)));
    for (std::uint64_t i = 0; i < count; ++i) g.data.push_back(get<double>(in));
    g.validate();
    return g;
}

std::string encode_grid(const GridFile& grid) {
    std::ostringstream out(std::ios::binary);
    write_grid(out, grid);
    return std::move(out).str();
}

GridFile decode_grid(std::string_view bytes) {
    std::istringstream in(std::string(bytes), std::ios::binary);
    return read_grid(in);
}

GridFile to_grid_file(const wigner::WignerGrid& grid) {
    GridFile f;
    f.dims = {grid.np(), grid.nx()};
    f.origin = {grid.p.empty() ? 0.0 : grid.p.front(), grid.x.empty() ? 0.0 : grid.x.front()};
    f.spacing = {grid.dp, grid.dx};
    f.hbar = grid.hbar;
    f.data = grid.f;
    return f;
}

GridFile to_grid_file(const em::RealField& field, double hbar) {
    GridFile f = grid3_header(field.grid, 3, hbar);
    f.data.reserve(field.values.size() * 3);
    for (const auto& v : field.values) f.data.insert(f.data.end(), {v[0], v[1], v[2]});
    return f;
}

GridFile to_grid_file(const em::ComplexField& field, double hbar) {
    GridFile f = grid3_header(field.grid, 6, hbar);
    f.data.reserve(field.values.size() * 6);
    for (const auto& v : field.values)
        for (int c = 0; c < 3; ++c) f.data.insert(f.data.end(), {v[c].real(), v[c].imag()});
    return f;
}

std::string format_double(double value) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    out << value;
    return std::move(out).str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) throw ValidationError("csv: header must not be empty");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw ValidationError("csv: row width differs from the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_double(values[i]);
    }
    text_ += '\n';
    ++rows_;
}

std::string wigner_csv(const wigner::WignerGrid& grid) {
    CsvWriter csv({"x", "p", "f"});
    for (std::size_t ip = 0; ip < grid.np(); ++ip)
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) csv.row({grid.x[ix], grid.p[ip], grid.at(ip, ix)});
    const std::string meta = "# nx=" + std::to_string(grid.nx()) + ",np=" + std::to_string(grid.np()) +
                             ",dx=" + format_double(grid.dx) + ",dp=" + format_double(grid.dp) +
                             ",hbar=" + format_double(grid.hbar) + "\n";
    return meta + csv.str();
}

} // namespace wq::io
