#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wsnfuse/config.hpp"
#include "wsnfuse/image.hpp"

namespace wsnfuse {

// Frame source for a scenario. Frames are keyed by (node, sensing time);
// ground truth, when known, enables the error metrics.
class ImageFeed {
public:
    virtual ~ImageFeed() = default;
    virtual Image frame(NodeId node, double t_ms) const = 0;
    virtual std::optional<Image> ground_truth(double t_ms) const { return std::nullopt; }
    virtual const std::vector<Image>& critical_templates() const = 0;
};

// Deterministic in-memory feed: a fresh textured scene per sensing round,
// per-node views degraded by a node-specific blurred stripe, and an exact
// critical-template overlay at the configured critical round. Ground truth
// is the undegraded scene, so fusion error is measurable.
class SyntheticFeed : public ImageFeed {
public:
    explicit SyntheticFeed(const ScenarioConfig& cfg);

    Image frame(NodeId node, double t_ms) const override;
    std::optional<Image> ground_truth(double t_ms) const override;
    const std::vector<Image>& critical_templates() const override;

private:
    int round_of(double t_ms) const;
    Image scene(int round) const;
    Image view(NodeId node, int round) const;

    int width_, height_, depth_, num_;
    std::uint64_t seed_;
    std::vector<double> schedule_ms_;
    int critical_round_ = -1;
    std::vector<Image> templates_;
};

// Feed loaded from a directory with a "feed.txt" manifest of lines
//   template <file>
//   truth <HH:MM> <file>
//   frame <node> <HH:MM> <file>
// All referenced PGM files are loaded eagerly; missing entries fail fast.
class DirectoryFeed : public ImageFeed {
public:
    explicit DirectoryFeed(const std::string& dir);

    Image frame(NodeId node, double t_ms) const override;
    std::optional<Image> ground_truth(double t_ms) const override;
    const std::vector<Image>& critical_templates() const override;

private:
    std::map<std::pair<NodeId, long>, Image> frames_;
    std::map<long, Image> truths_;
    std::vector<Image> templates_;
};

// Feed selected by cfg.feed_mode; directory mode requires a readable
// manifest or throws ConfigError ("missing image feed").
std::unique_ptr<ImageFeed> open_feed(const ScenarioConfig& cfg);

// Materializes the synthetic feed as PGM files plus manifest, so directory
// and synthetic runs are interchangeable. 8/16-bit depths only.
void write_feed(const ScenarioConfig& cfg, const std::string& dir);

}  // namespace wsnfuse
