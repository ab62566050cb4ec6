#include "wsnfuse/wavelet.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace wsnfuse {

namespace {

void analyze_into(std::span<const double> x, const FilterBank& bank,
                  double* low, double* high, std::ptrdiff_t stride) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    const auto& al = bank.analysis_low;
    const auto& ah = bank.analysis_high;
    for (std::size_t i = 0; i < half; ++i) {
        double a = 0.0, d = 0.0;
        const std::size_t base = 2 * i;
        for (std::size_t k = 0; k < al.size(); ++k) a += al[k] * x[(base + k) % n];
        for (std::size_t k = 0; k < ah.size(); ++k) d += ah[k] * x[(base + k) % n];
        low[static_cast<std::ptrdiff_t>(i) * stride] = a;
        high[static_cast<std::ptrdiff_t>(i) * stride] = d;
    }
}

void synthesize_into(std::span<const double> low, std::span<const double> high,
                     const FilterBank& bank, double* out, std::ptrdiff_t stride) {
    const std::size_t half = low.size();
    const std::size_t n = 2 * half;
    for (std::size_t m = 0; m < n; ++m) out[static_cast<std::ptrdiff_t>(m) * stride] = 0.0;
    const auto& sl = bank.synthesis_low;
    const auto& sh = bank.synthesis_high;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t base = 2 * i;
        const double a = low[i];
        const double d = high[i];
        for (std::size_t k = 0; k < sl.size(); ++k)
            out[static_cast<std::ptrdiff_t>((base + k) % n) * stride] += a * sl[k];
        for (std::size_t k = 0; k < sh.size(); ++k)
            out[static_cast<std::ptrdiff_t>((base + k) % n) * stride] += d * sh[k];
    }
}

struct LevelSplit {
    Grid ll, lh, hl, hh;
};

// One separable level: rows first, then columns of each half.
LevelSplit analyze_level(const Grid& in, const FilterBank& bank) {
    const int r = in.rows, c = in.cols;
    Grid lowx(r, c / 2), highx(r, c / 2);
    for (int row = 0; row < r; ++row) {
        analyze_into({&in.v[static_cast<std::size_t>(row) * c], static_cast<std::size_t>(c)},
                     bank, &lowx.at(row, 0), &highx.at(row, 0), 1);
    }
    LevelSplit out{Grid(r / 2, c / 2), Grid(r / 2, c / 2), Grid(r / 2, c / 2),
                   Grid(r / 2, c / 2)};
    std::vector<double> col(static_cast<std::size_t>(r));
    for (int j = 0; j < c / 2; ++j) {
        for (int i = 0; i < r; ++i) col[static_cast<std::size_t>(i)] = lowx.at(i, j);
        analyze_into(col, bank, &out.ll.at(0, j), &out.lh.at(0, j), out.ll.cols);
        for (int i = 0; i < r; ++i) col[static_cast<std::size_t>(i)] = highx.at(i, j);
        analyze_into(col, bank, &out.hl.at(0, j), &out.hh.at(0, j), out.hl.cols);
    }
    return out;
}

Grid synthesize_level(const Grid& ll, const Grid& lh, const Grid& hl, const Grid& hh,
                      const FilterBank& bank) {
    const int r2 = ll.rows, c2 = ll.cols;
    const int r = 2 * r2, c = 2 * c2;
    Grid lowx(r, c2), highx(r, c2);
    std::vector<double> cola(static_cast<std::size_t>(r2)), cold(static_cast<std::size_t>(r2));
    for (int j = 0; j < c2; ++j) {
        for (int i = 0; i < r2; ++i) {
            cola[static_cast<std::size_t>(i)] = ll.at(i, j);
            cold[static_cast<std::size_t>(i)] = lh.at(i, j);
        }
        synthesize_into(cola, cold, bank, &lowx.at(0, j), lowx.cols);
        for (int i = 0; i < r2; ++i) {
            cola[static_cast<std::size_t>(i)] = hl.at(i, j);
            cold[static_cast<std::size_t>(i)] = hh.at(i, j);
        }
        synthesize_into(cola, cold, bank, &highx.at(0, j), highx.cols);
    }
    Grid out(r, c);
    std::vector<double> rowl(static_cast<std::size_t>(c2)), rowh(static_cast<std::size_t>(c2));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c2; ++j) {
            rowl[static_cast<std::size_t>(j)] = lowx.at(i, j);
            rowh[static_cast<std::size_t>(j)] = highx.at(i, j);
        }
        synthesize_into(rowl, rowh, bank, &out.at(i, 0), 1);
    }
    return out;
}

void check_band(const Grid& g, int rows, int cols, const char* name) {
    if (g.rows != rows || g.cols != cols)
        throw std::invalid_argument(std::string("subband ") + name +
                                    " has inconsistent shape");
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> analysis_step_1d(
    std::span<const double> signal, const FilterBank& bank) {
    if (signal.size() < 2 || signal.size() % 2 != 0)
        throw std::invalid_argument("signal length must be even and >= 2");
    std::vector<double> low(signal.size() / 2), high(signal.size() / 2);
    analyze_into(signal, bank, low.data(), high.data(), 1);
    return {std::move(low), std::move(high)};
}

std::vector<double> synthesis_step_1d(std::span<const double> low,
                                      std::span<const double> high,
                                      const FilterBank& bank) {
    if (low.size() != high.size())
        throw std::invalid_argument("low/high length mismatch");
    if (low.empty()) throw std::invalid_argument("empty subbands");
    std::vector<double> out(2 * low.size());
    synthesize_into(low, high, bank, out.data(), 1);
    return out;
}

SubbandPyramid dwt2(const Grid& input, std::string_view basis, int levels, int bit_depth) {
    if (levels < 1 || levels > kMaxDwtLevels)
        throw std::invalid_argument("levels must be in [1, " +
                                    std::to_string(kMaxDwtLevels) + "]");
    const int div = 1 << levels;
    if (input.cols % div != 0 || input.rows % div != 0)
        throw std::invalid_argument("dimensions " + std::to_string(input.cols) + "x" +
                                    std::to_string(input.rows) +
                                    " not divisible by 2^" + std::to_string(levels));
    const FilterBank& bank = basis_filters(basis);
    SubbandPyramid pyr;
    pyr.levels = levels;
    pyr.original_width = input.cols;
    pyr.original_height = input.rows;
    pyr.bit_depth = bit_depth;
    pyr.basis = bank.name;
    Grid cur = input;
    for (int k = 1; k <= levels; ++k) {
        LevelSplit split = analyze_level(cur, bank);
        pyr.details.push_back({std::move(split.lh), std::move(split.hl), std::move(split.hh)});
        cur = std::move(split.ll);
    }
    pyr.approximation = std::move(cur);
    return pyr;
}

SubbandPyramid dwt2(const Image& img, std::string_view basis, int levels) {
    return dwt2(to_grid(img), basis, levels, img.bit_depth);
}

Grid idwt2_real(const SubbandPyramid& pyr) {
    if (pyr.levels < 1 || static_cast<int>(pyr.details.size()) != pyr.levels)
        throw std::invalid_argument("pyramid has inconsistent level count");
    const FilterBank& bank = basis_filters(pyr.basis);
    int r = pyr.original_height >> pyr.levels;
    int c = pyr.original_width >> pyr.levels;
    check_band(pyr.approximation, r, c, "LL");
    Grid cur = pyr.approximation;
    for (int k = pyr.levels; k >= 1; --k) {
        const DetailBands& d = pyr.details[static_cast<std::size_t>(k - 1)];
        check_band(d.lh, r, c, "LH");
        check_band(d.hl, r, c, "HL");
        check_band(d.hh, r, c, "HH");
        cur = synthesize_level(cur, d.lh, d.hl, d.hh, bank);
        r *= 2;
        c *= 2;
    }
    return cur;
}

Image idwt2(const SubbandPyramid& pyr) {
    return to_image(idwt2_real(pyr), pyr.bit_depth);
}

Grid to_grid(const Image& img) {
    Grid g(img.height, img.width);
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        g.v[i] = static_cast<double>(img.pixels[i]);
    return g;
}

Image to_image(const Grid& g, int bit_depth) {
    Image out(g.cols, g.rows, bit_depth);
    const double maxv = static_cast<double>((1u << bit_depth) - 1u);
    for (std::size_t i = 0; i < g.v.size(); ++i) {
        double x = std::round(g.v[i]);
        if (x < 0.0) x = 0.0;
        if (x > maxv) x = maxv;
        out.pixels[i] = static_cast<std::uint32_t>(x);
    }
    return out;
}

void dump_pyramid(const SubbandPyramid& pyr, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream manifest(fs::path(dir) / "manifest.txt");
    if (!manifest) throw std::runtime_error("cannot write manifest in " + dir);
    auto write_band = [&](const std::string& name, const Grid& g) {
        std::ofstream os(fs::path(dir) / (name + ".f32"), std::ios::binary);
        if (!os) throw std::runtime_error("cannot write band " + name);
        for (double x : g.v) {
            const float f = static_cast<float>(x);
            static_assert(sizeof(float) == 4);
            char b[4];
            std::memcpy(b, &f, 4);  // little-endian host assumed
            os.write(b, 4);
        }
        manifest << name << ' ' << g.rows << ' ' << g.cols << '\n';
    };
    write_band("LL" + std::to_string(pyr.levels), pyr.approximation);
    for (int k = 1; k <= pyr.levels; ++k) {
        const DetailBands& d = pyr.details[static_cast<std::size_t>(k - 1)];
        write_band("LH" + std::to_string(k), d.lh);
        write_band("HL" + std::to_string(k), d.hl);
        write_band("HH" + std::to_string(k), d.hh);
    }
}

}  // namespace wsnfuse
