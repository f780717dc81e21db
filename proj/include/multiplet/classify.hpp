#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace multiplet {

struct IdxImages {
    std::size_t count = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> pixels;  ///< count * rows * cols, row-major

    std::span<const std::uint8_t> image(std::size_t i) const {
        return {pixels.data() + i * rows * cols, rows * cols};
    }
};

/// Big-endian IDX, magic 0x00000803 (images) / 0x00000801 (labels).
IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);
IdxImages read_idx_images(const std::string& path);
std::vector<std::uint8_t> read_idx_labels(const std::string& path);

/// Real-valued vectors with class ids.  All vectors share one dimension.
struct LabeledVectorSet {
    std::vector<std::vector<double>> vectors;
    std::vector<int> labels;

    std::size_t size() const noexcept { return vectors.size(); }
    std::size_t dim() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }
    void validate() const;
};

/// Affine map of 0..255 to [lo, hi]; negate applies 1 - x afterwards.
std::vector<double> preprocess_scale(std::span<const std::uint8_t> raw, double lo = 0.02,
                                     double hi = 0.98, bool negate = false);

LabeledVectorSet make_labeled_set(const IdxImages& images, std::span<const std::uint8_t> labels,
                                  double lo = 0.02, double hi = 0.98);

/// n items drawn without replacement (seeded), original order preserved.
LabeledVectorSet subsample(const LabeledVectorSet& set, std::size_t n, std::uint64_t seed);

/// Two classes on a 4x4 grid: class 0 bright on the left half, class 1 bright on
/// the right half, with seeded uniform noise of the given amplitude.
LabeledVectorSet toy_patterns(std::size_t per_class, std::uint64_t seed, double noise = 0.05);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

struct AccuracyReport {
    double error_rate = 0.0;  ///< over covered cases
    double coverage = 1.0;
    std::size_t n_test = 0;
    std::size_t n_covered = 0;
    std::size_t n_errors = 0;
    std::vector<int> predictions;  ///< -1 marks abstention
    nlohmann::json config;
};

nlohmann::json report_to_json(const AccuracyReport& r);

struct NnConfig {
    double p = -3.0;
    double L = 4.0;
};

/// Σ w^L x^p / Σ w^L x^(p-1) with w = candidate and x = 1 - test.
double lehmer_1nn_score(std::span<const double> candidate, std::span<const double> test,
                        const NnConfig& cfg);

/// Argmin over training candidates; ties go to the lowest index.
AccuracyReport lehmer_1nn(const LabeledVectorSet& train, const LabeledVectorSet& test,
                          const NnConfig& cfg = {}, const ProgressFn& progress = {});

struct InsideOutsideConfig {
    double p_or = 5.0;
    double p_and = -3.0;
    double threshold = 1.0 / 14.0;
    std::size_t top_k = 4;
    double binarize_at = 0.5;  ///< midpoint of [lo, hi] maps low/high
    double lo = 0.02;
    double hi = 0.98;
    double L = 16.0;  ///< weight power; floor weights must vanish against x^p_and
    double T = 1.0;
};

/// Binarized vector followed by its complement.
std::vector<double> inside_outside_encode(std::span<const double> v, const InsideOutsideConfig& cfg);

/// XNOR composition I of encoded test x weighted by encoded candidate w.
double inside_outside_score(std::span<const double> candidate_encoded,
                            std::span<const double> test_encoded, const InsideOutsideConfig& cfg);

AccuracyReport inside_outside(const LabeledVectorSet& train, const LabeledVectorSet& test,
                              const InsideOutsideConfig& cfg = {}, const ProgressFn& progress = {});

}  // namespace multiplet
