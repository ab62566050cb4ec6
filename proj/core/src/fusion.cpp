#include "wsnfuse/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace wsnfuse {

FusionProfile FusionProfile::low_default() {
    return FusionProfile{ResolutionClass::Low, "haar", 1, 8, 3, 1.0, FusionMode::Wavelet};
}

FusionProfile FusionProfile::high_default() {
    return FusionProfile{ResolutionClass::High, "db4", 3, 16, 3, 1.0, FusionMode::Wavelet};
}

namespace {

void require_compatible(const SubbandPyramid& a, const SubbandPyramid& b) {
    if (a.basis != b.basis) throw std::invalid_argument("pyramid basis mismatch");
    if (a.levels != b.levels) throw std::invalid_argument("pyramid level mismatch");
    if (!a.approximation.same_shape(b.approximation))
        throw std::invalid_argument("approximation band shape mismatch");
    for (int k = 0; k < a.levels; ++k) {
        const auto& da = a.details[static_cast<std::size_t>(k)];
        const auto& db = b.details[static_cast<std::size_t>(k)];
        if (!da.lh.same_shape(db.lh) || !da.hl.same_shape(db.hl) || !da.hh.same_shape(db.hh))
            throw std::invalid_argument("detail band shape mismatch");
    }
}

// Window sum of squared coefficients around (r, c), window clipped at edges.
double activity(const Grid& g, int r, int c, int half) {
    double acc = 0.0;
    const int r0 = r - half < 0 ? 0 : r - half;
    const int r1 = r + half >= g.rows ? g.rows - 1 : r + half;
    const int c0 = c - half < 0 ? 0 : c - half;
    const int c1 = c + half >= g.cols ? g.cols - 1 : c + half;
    for (int i = r0; i <= r1; ++i)
        for (int j = c0; j <= c1; ++j) {
            const double x = g.at(i, j);
            acc += x * x;
        }
    return acc;
}

ByteGrid select_band(const Grid& a, const Grid& b, int half) {
    ByteGrid out(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            out.at(i, j) = activity(a, i, j, half) >= activity(b, i, j, half)
                               ? static_cast<std::uint8_t>(Source::A)
                               : static_cast<std::uint8_t>(Source::B);
    return out;
}

ByteGrid majority_band(const ByteGrid& in) {
    ByteGrid out(in.rows, in.cols);
    for (int i = 0; i < in.rows; ++i)
        for (int j = 0; j < in.cols; ++j) {
            int votes_a = 0, votes_b = 0;
            const int r0 = i > 0 ? i - 1 : 0;
            const int r1 = i + 1 < in.rows ? i + 1 : in.rows - 1;
            const int c0 = j > 0 ? j - 1 : 0;
            const int c1 = j + 1 < in.cols ? j + 1 : in.cols - 1;
            for (int r = r0; r <= r1; ++r)
                for (int c = c0; c <= c1; ++c)
                    (in.at(r, c) == static_cast<std::uint8_t>(Source::A) ? votes_a : votes_b)++;
            if (votes_a > votes_b)
                out.at(i, j) = static_cast<std::uint8_t>(Source::A);
            else if (votes_b > votes_a)
                out.at(i, j) = static_cast<std::uint8_t>(Source::B);
            else
                out.at(i, j) = in.at(i, j);
        }
    return out;
}

Grid pick(const Grid& a, const Grid& b, const ByteGrid& sel) {
    Grid out(a.rows, a.cols);
    for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] = sel.v[i] == static_cast<std::uint8_t>(Source::A) ? a.v[i] : b.v[i];
    return out;
}

}  // namespace

DecisionMap decision_map(const SubbandPyramid& pyr_a, const SubbandPyramid& pyr_b,
                         int window) {
    require_compatible(pyr_a, pyr_b);
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("window must be odd and >= 1");
    const int half = window / 2;
    DecisionMap map;
    map.levels = pyr_a.levels;
    map.approximation = ByteGrid(pyr_a.approximation.rows, pyr_a.approximation.cols,
                                 static_cast<std::uint8_t>(Source::A));
    for (int k = 0; k < pyr_a.levels; ++k) {
        const auto& da = pyr_a.details[static_cast<std::size_t>(k)];
        const auto& db = pyr_b.details[static_cast<std::size_t>(k)];
        map.details.push_back({select_band(da.lh, db.lh, half),
                               select_band(da.hl, db.hl, half),
                               select_band(da.hh, db.hh, half)});
    }
    return map;
}

DecisionMap consistency_verify(const DecisionMap& map) {
    DecisionMap out;
    out.levels = map.levels;
    out.approximation = map.approximation;
    for (const auto& bands : map.details)
        out.details.push_back({majority_band(bands.lh), majority_band(bands.hl),
                               majority_band(bands.hh)});
    return out;
}

SubbandPyramid combine(const SubbandPyramid& pyr_a, const SubbandPyramid& pyr_b,
                       const DecisionMap& map) {
    require_compatible(pyr_a, pyr_b);
    if (map.levels != pyr_a.levels)
        throw std::invalid_argument("decision map level mismatch");
    SubbandPyramid out = pyr_a;
    for (std::size_t i = 0; i < out.approximation.v.size(); ++i)
        out.approximation.v[i] =
            0.5 * (pyr_a.approximation.v[i] + pyr_b.approximation.v[i]);
    for (int k = 0; k < out.levels; ++k) {
        const auto& da = pyr_a.details[static_cast<std::size_t>(k)];
        const auto& db = pyr_b.details[static_cast<std::size_t>(k)];
        const auto& sel = map.details[static_cast<std::size_t>(k)];
        if (!sel.lh.same_shape(da.lh))
            throw std::invalid_argument("decision map shape mismatch");
        auto& dst = out.details[static_cast<std::size_t>(k)];
        dst.lh = pick(da.lh, db.lh, sel.lh);
        dst.hl = pick(da.hl, db.hl, sel.hl);
        dst.hh = pick(da.hh, db.hh, sel.hh);
    }
    return out;
}

Image fuse_pair(const Image& img_a, const Image& img_b, const FusionProfile& profile) {
    if (!img_a.same_shape(img_b))
        throw std::invalid_argument("fuse_pair: image dimensions differ");
    const Image a = requantize(img_a, profile.output_bit_depth);
    const Image b = requantize(img_b, profile.output_bit_depth);
    const SubbandPyramid pa = dwt2(a, profile.basis, profile.levels);
    const SubbandPyramid pb = dwt2(b, profile.basis, profile.levels);
    const DecisionMap map = consistency_verify(decision_map(pa, pb, profile.window));
    return idwt2(combine(pa, pb, map));
}

Image accumulate_fuse(const Image& running, const Image& next,
                      const FusionProfile& profile) {
    if (!running.same_shape(next))
        throw std::invalid_argument("accumulate_fuse: image dimensions differ");
    if (profile.mode == FusionMode::Wavelet) {
        FusionProfile p = profile;
        p.output_bit_depth = running.bit_depth;  // carried image keeps its depth
        return fuse_pair(running, next, p);
    }
    const Image scaled = requantize(next, running.bit_depth);
    Image out(running.width, running.height, running.bit_depth);
    const double maxv = static_cast<double>(running.max_value());
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        double x = static_cast<double>(running.pixels[i]) +
                   profile.fusion_factor * static_cast<double>(scaled.pixels[i]);
        x = std::round(x);
        if (x < 0.0) x = 0.0;
        if (x > maxv) x = maxv;
        out.pixels[i] = static_cast<std::uint32_t>(x);
    }
    return out;
}

}  // namespace wsnfuse
