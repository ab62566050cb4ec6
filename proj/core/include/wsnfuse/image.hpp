#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wsnfuse {

/// Grayscale raster. Pixels are stored row-major, top row first, as raw
/// integer sample values strictly below 2^bit_depth. Supported depths are
/// 8, 12, 16 and 24 bits per pixel; only 8 and 16 have an on-disk PGM form
/// (12/24-bit images live in memory and in raw sidecar dumps).
struct Image {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::vector<std::uint32_t> pixels;

    Image() = default;
    // Validating constructor: throws std::invalid_argument on any broken
    // invariant. An empty pixel vector is allocated as all-zero.
    Image(int w, int h, int depth, std::vector<std::uint32_t> px = {});

    std::uint32_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    void set(int row, int col, std::uint32_t value) {
        pixels[static_cast<std::size_t>(row) * width + col] = value;
    }
    std::uint32_t max_value() const { return (1u << bit_depth) - 1u; }
    std::size_t pixel_count() const { return pixels.size(); }
    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height;
    }
    bool operator==(const Image& o) const = default;
};

/// Gray-level occurrence counts. Dense up to 16-bit depths; 24-bit images
/// use a sparse association to keep memory bounded.
class Histogram {
public:
    static Histogram of(const Image& img);

    std::uint64_t count(std::uint32_t level) const;
    std::uint64_t total() const { return total_; }
    int bit_depth() const { return bit_depth_; }

    template <typename Fn>  // Fn(level, count), nonzero bins only, ascending
    void for_each(Fn&& fn) const {
        if (!dense_.empty()) {
            for (std::uint32_t k = 0; k < dense_.size(); ++k)
                if (dense_[k] != 0) fn(k, dense_[k]);
        } else {
            for (const auto& [k, c] : sparse_) fn(k, c);
        }
    }

private:
    int bit_depth_ = 8;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> dense_;
    std::map<std::uint32_t, std::uint64_t> sparse_;
};

// Shannon entropy in bits over the gray-level distribution, zero-probability
// bins skipped. Always in [0, bit_depth].
double entropy(const Image& img);

// Pixel-wise absolute difference |present - previous|. Dimensions and depth
// must match.
Image difference(const Image& present, const Image& previous);

// Entropy of the difference image: the scene-change signal strength.
double signal_strength(const Image& present, const Image& previous);

struct ErrorMeasure {
    double std_of_difference = 0.0;   // population std of signed differences
    double mean_squared_error = 0.0;  // conventional MSE
};

// Both error statistics between an ideal image and a candidate. Only the
// dimensions must agree; values are compared as raw sample values.
ErrorMeasure error_measure(const Image& ideal, const Image& candidate);

// Linear depth change by bit shift: upscale multiplies by 2^(target-source),
// downscale truncates toward zero. target must be one of 8/12/16/24.
Image requantize(const Image& img, int target_depth);

// Raw sidecar dump for depths without a PGM form: three little-endian
// uint32 words (width, height, bit_depth) followed by row-major
// little-endian uint32 samples.
void save_raw(const Image& img, const std::string& path);
Image load_raw(const std::string& path);

}  // namespace wsnfuse
