#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsnfuse/image.hpp"
#include "wsnfuse/wavelet.hpp"

namespace wsnfuse {

enum class Source : std::uint8_t { A = 0, B = 1 };

// Per-coefficient source selection, mirroring the pyramid band catalog.
// The approximation map is kept for completeness but combine() always
// averages that band.
struct DecisionMap {
    struct Bands {
        ByteGrid lh, hl, hh;
    };
    int levels = 0;
    ByteGrid approximation;
    std::vector<Bands> details;
};

enum class ResolutionClass { Low, High };
enum class FusionMode { Wavelet, Additive };

struct FusionProfile {
    ResolutionClass resolution_class = ResolutionClass::Low;
    std::string basis = "haar";
    int levels = 1;
    int output_bit_depth = 8;
    int window = 3;                          // odd activity window side
    double fusion_factor = 1.0;              // rho, additive mode weight
    FusionMode mode = FusionMode::Wavelet;

    static FusionProfile low_default();      // haar, K=1, 8 bit, w=3
    static FusionProfile high_default();     // db4, K=3, 16 bit, w=3
};

// Area-based maximum selection: activity is the window sum of squared
// detail coefficients (edge-clipped). Ties select SOURCE_A.
DecisionMap decision_map(const SubbandPyramid& pyr_a, const SubbandPyramid& pyr_b,
                         int window);

// 3x3 majority vote per detail band (edge-clipped, ties keep the entry).
DecisionMap consistency_verify(const DecisionMap& map);

// Detail coefficients copied from the selected source; approximation band
// is the arithmetic mean of the two inputs.
SubbandPyramid combine(const SubbandPyramid& pyr_a, const SubbandPyramid& pyr_b,
                       const DecisionMap& map);

// Whole pipeline on a pair of equal-size images: both inputs are first
// requantized to profile.output_bit_depth, so mixed-depth sources are
// accepted as long as the dimensions agree.
Image fuse_pair(const Image& img_a, const Image& img_b, const FusionProfile& profile);

// Itinerary accumulation. Wavelet mode fuses pairwise; additive mode is the
// running + rho*next transmission model, clamped to the running depth.
Image accumulate_fuse(const Image& running, const Image& next,
                      const FusionProfile& profile);

}  // namespace wsnfuse
