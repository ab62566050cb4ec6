#include "wsnfuse/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wsnfuse {

namespace {

bool valid_depth(int d) { return d == 8 || d == 12 || d == 16 || d == 24; }

void require_same_shape_depth(const Image& a, const Image& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("image dimensions differ: " +
                                    std::to_string(a.width) + "x" + std::to_string(a.height) +
                                    " vs " + std::to_string(b.width) + "x" +
                                    std::to_string(b.height));
    if (a.bit_depth != b.bit_depth)
        throw std::invalid_argument("image bit depths differ");
}

}  // namespace

Image::Image(int w, int h, int depth, std::vector<std::uint32_t> px)
    : width(w), height(h), bit_depth(depth), pixels(std::move(px)) {
    if (w < 2 || h < 2)
        throw std::invalid_argument("image must be at least 2x2");
    if (!valid_depth(depth))
        throw std::invalid_argument("bit depth must be one of 8/12/16/24");
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (pixels.empty()) {
        pixels.assign(n, 0);
    } else if (pixels.size() != n) {
        throw std::invalid_argument("pixel count does not match dimensions");
    }
    const std::uint32_t limit = (1u << depth) - 1u;
    for (std::uint32_t v : pixels)
        if (v > limit)
            throw std::invalid_argument("pixel value exceeds bit depth");
}

Histogram Histogram::of(const Image& img) {
    Histogram h;
    h.bit_depth_ = img.bit_depth;
    h.total_ = img.pixel_count();
    if (img.bit_depth <= 16) {
        h.dense_.assign(std::size_t{1} << img.bit_depth, 0);
        for (std::uint32_t v : img.pixels) ++h.dense_[v];
    } else {
        for (std::uint32_t v : img.pixels) ++h.sparse_[v];
    }
    return h;
}

std::uint64_t Histogram::count(std::uint32_t level) const {
    if (!dense_.empty())
        return level < dense_.size() ? dense_[level] : 0;
    auto it = sparse_.find(level);
    return it == sparse_.end() ? 0 : it->second;
}

double entropy(const Image& img) {
    const Histogram h = Histogram::of(img);
    const double total = static_cast<double>(h.total());
    double bits = 0.0;
    h.for_each([&](std::uint32_t, std::uint64_t c) {
        const double p = static_cast<double>(c) / total;
        bits -= p * std::log2(p);
    });
    return bits < 0.0 ? 0.0 : bits;
}

Image difference(const Image& present, const Image& previous) {
    require_same_shape_depth(present, previous);
    Image out(present.width, present.height, present.bit_depth);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        const std::uint32_t a = present.pixels[i];
        const std::uint32_t b = previous.pixels[i];
        out.pixels[i] = a >= b ? a - b : b - a;
    }
    return out;
}

double signal_strength(const Image& present, const Image& previous) {
    return entropy(difference(present, previous));
}

ErrorMeasure error_measure(const Image& ideal, const Image& candidate) {
    if (!ideal.same_shape(candidate))
        throw std::invalid_argument("image dimensions differ");
    const std::size_t n = ideal.pixel_count();
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(ideal.pixels[i]) -
                         static_cast<double>(candidate.pixels[i]);
        sum += d;
        sumsq += d * d;
    }
    const double mean = sum / static_cast<double>(n);
    const double msq = sumsq / static_cast<double>(n);
    double var = msq - mean * mean;
    if (var < 0.0) var = 0.0;  // rounding guard
    return {std::sqrt(var), msq};
}

Image requantize(const Image& img, int target_depth) {
    if (!valid_depth(target_depth))
        throw std::invalid_argument("target depth must be one of 8/12/16/24");
    if (target_depth == img.bit_depth) return img;
    Image out(img.width, img.height, target_depth);
    if (target_depth > img.bit_depth) {
        const int shift = target_depth - img.bit_depth;
        for (std::size_t i = 0; i < img.pixel_count(); ++i)
            out.pixels[i] = img.pixels[i] << shift;
    } else {
        const int shift = img.bit_depth - target_depth;
        for (std::size_t i = 0; i < img.pixel_count(); ++i)
            out.pixels[i] = img.pixels[i] >> shift;
    }
    return out;
}

namespace {

void put_u32le(std::ofstream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32le(std::ifstream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("raw image file truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void save_raw(const Image& img, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    put_u32le(os, static_cast<std::uint32_t>(img.width));
    put_u32le(os, static_cast<std::uint32_t>(img.height));
    put_u32le(os, static_cast<std::uint32_t>(img.bit_depth));
    for (std::uint32_t v : img.pixels) put_u32le(os, v);
    if (!os) throw std::runtime_error("write failed: " + path);
}

Image load_raw(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    const int w = static_cast<int>(get_u32le(is));
    const int h = static_cast<int>(get_u32le(is));
    const int d = static_cast<int>(get_u32le(is));
    Image out(w, h, d);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) out.pixels[i] = get_u32le(is);
    return out;
}

}  // namespace wsnfuse
