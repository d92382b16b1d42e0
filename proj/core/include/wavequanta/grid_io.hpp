#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wavequanta/em_field.hpp"
#include "wavequanta/wigner.hpp"

namespace wq::io {

/// Dense grid file: magic "WQGRID1\0", u32 rank, u32 ncomp, u64 dims[rank], f64 origin[rank],
/// f64 spacing[rank], f64 hbar, then prod(dims) * ncomp f64 values, last axis fastest and
/// components innermost. Everything little-endian.
struct GridFile {
    std::vector<std::uint64_t> dims;
    std::uint32_t ncomp = 1;
    std::vector<double> origin;
    std::vector<double> spacing;
    double hbar = 1.0;
    std::vector<double> data;

    /// Throws ValidationError when the shape fields disagree with each other or with data.
    void validate() const;
    bool operator==(const GridFile&) const = default;
};

void write_grid(std::ostream& out, const GridFile& grid);
/// Throws ValidationError for a bad magic, truncated input or inconsistent shape.
GridFile read_grid(std::istream& in);
std::string encode_grid(const GridFile& grid);
GridFile decode_grid(std::string_view bytes);

/// Axis 0 = p rows, axis 1 = x columns.
GridFile to_grid_file(const wigner::WignerGrid& grid);
/// 3 components per point.
GridFile to_grid_file(const em::RealField& field, double hbar = 1.0);
/// Real and imaginary parts interleaved: 6 components per point.
GridFile to_grid_file(const em::ComplexField& field, double hbar = 1.0);

/// 17 significant digits, '.' decimal, classic locale.
std::string format_double(double value);

/// Builds CSV text in memory with '\n' line endings.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    std::size_t rows() const { return rows_; }
    const std::string& str() const { return text_; }

  private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

/// A '# nx=..,np=..,dx=..,dp=..,hbar=..' line, then columns x, p, f for every grid point.
std::string wigner_csv(const wigner::WignerGrid& grid);

} // namespace wq::io
