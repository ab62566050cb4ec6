#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsnfuse/image.hpp"

namespace wsnfuse {

template <typename T>
struct GridT {
    int rows = 0;
    int cols = 0;
    std::vector<T> v;

    GridT() = default;
    GridT(int r, int c, T fill = T{}) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

    T& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    const T& at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
    bool same_shape(const GridT& o) const { return rows == o.rows && cols == o.cols; }
};

using Grid = GridT<double>;
using ByteGrid = GridT<std::uint8_t>;

// Two-channel filter bank. Application conventions (frozen; golden tests
// depend on them):
//   analysis:  out[i]  = sum_k  f[k] * x[(2i + k) mod n]
//   synthesis: y[(2i + k) mod n] += coeff[i] * f[k]
// Signals are extended periodically, which keeps every listed bank
// perfectly reconstructing at any even length.
struct FilterBank {
    std::string name;
    std::vector<double> analysis_low;
    std::vector<double> analysis_high;
    std::vector<double> synthesis_low;
    std::vector<double> synthesis_high;
};

// Supported bases: haar, db3, db4, db10, bior1.1, bior1.3, bior1.5,
// bior2.4, bior3.7, bior4.4. Unknown names throw std::invalid_argument.
const FilterBank& basis_filters(std::string_view name);
const std::vector<std::string>& supported_bases();

// One analysis/synthesis step of the two-channel scheme. Input length must
// be even; synthesis inverts analysis exactly (up to float rounding).
std::pair<std::vector<double>, std::vector<double>> analysis_step_1d(
    std::span<const double> signal, const FilterBank& bank);
std::vector<double> synthesis_step_1d(std::span<const double> low,
                                      std::span<const double> high,
                                      const FilterBank& bank);

struct DetailBands {
    Grid lh;  // horizontal detail: low-pass along x, high-pass along y
    Grid hl;  // vertical detail:   high-pass along x, low-pass along y
    Grid hh;  // diagonal detail
};

// Multi-level separable 2-D decomposition. details[k-1] holds level k;
// level 1 is the finest (half resolution), the approximation band is LL at
// the coarsest level.
struct SubbandPyramid {
    int levels = 0;
    Grid approximation;
    std::vector<DetailBands> details;
    int original_width = 0;
    int original_height = 0;
    int bit_depth = 8;
    std::string basis;
};

inline constexpr int kMaxDwtLevels = 5;

// Rows are transformed first, then columns, recursively on the LL band.
// Width and height must be divisible by 2^levels.
SubbandPyramid dwt2(const Grid& input, std::string_view basis, int levels,
                    int bit_depth = 8);
SubbandPyramid dwt2(const Image& img, std::string_view basis, int levels);

// Real-valued reconstruction (no rounding), and the image form rounded to
// nearest and clamped to [0, 2^bit_depth - 1].
Grid idwt2_real(const SubbandPyramid& pyr);
Image idwt2(const SubbandPyramid& pyr);

Grid to_grid(const Image& img);
Image to_image(const Grid& g, int bit_depth);

// Debug dump: one raw little-endian float32 file per band plus a
// "manifest.txt" of (band name, rows, cols) lines.
void dump_pyramid(const SubbandPyramid& pyr, const std::string& dir);

}  // namespace wsnfuse
