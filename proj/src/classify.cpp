#include "multiplet/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "multiplet/errors.hpp"
#include "multiplet/parallel.hpp"

namespace multiplet {

namespace {

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t off) {
    if (off + 4 > b.size()) throw InvalidArgument("truncated IDX header");
    return (std::uint32_t(b[off]) << 24) | (std::uint32_t(b[off + 1]) << 16) |
           (std::uint32_t(b[off + 2]) << 8) | std::uint32_t(b[off + 3]);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> powers(std::span<const double> x, double e) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::pow(x[i], e);
    return out;
}

void check_pair(const LabeledVectorSet& train, const LabeledVectorSet& test) {
    train.validate();
    test.validate();
    if (train.size() == 0 || test.size() == 0) throw InvalidArgument("empty data set");
    if (train.dim() != test.dim()) throw LengthMismatch(train.dim(), test.dim());
}

/// Runs score_item over the test set concurrently, reporting progress.
void run_items(std::size_t n, const ProgressFn& progress,
               const std::function<void(std::size_t)>& item) {
    std::atomic<std::size_t> done{0};
    std::mutex mu;
    parallel_for(n, [&](std::size_t i) {
        item(i);
        const std::size_t d = ++done;
        if (progress && (d % 100 == 0 || d == n)) {
            std::lock_guard lock(mu);
            progress(d, n);
        }
    });
}

void finish(AccuracyReport& r, const LabeledVectorSet& test) {
    r.n_test = test.size();
    r.n_covered = 0;
    r.n_errors = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (r.predictions[i] < 0) continue;
        ++r.n_covered;
        if (r.predictions[i] != test.labels[i]) ++r.n_errors;
    }
    r.coverage = static_cast<double>(r.n_covered) / static_cast<double>(r.n_test);
    r.error_rate = r.n_covered ? static_cast<double>(r.n_errors) / static_cast<double>(r.n_covered)
                               : 0.0;
}

}  // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
    if (be32(bytes, 0) != 0x00000803u) throw InvalidArgument("bad IDX image magic");
    IdxImages img;
    img.count = be32(bytes, 4);
    img.rows = be32(bytes, 8);
    img.cols = be32(bytes, 12);
    const std::size_t need = img.count * img.rows * img.cols;
    if (bytes.size() < 16 + need) throw InvalidArgument("truncated IDX image payload");
    img.pixels.assign(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(need));
    return img;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
    if (be32(bytes, 0) != 0x00000801u) throw InvalidArgument("bad IDX label magic");
    const std::size_t n = be32(bytes, 4);
    if (bytes.size() < 8 + n) throw InvalidArgument("truncated IDX label payload");
    return {bytes.begin() + 8, bytes.begin() + 8 + static_cast<std::ptrdiff_t>(n)};
}

IdxImages read_idx_images(const std::string& path) { return parse_idx_images(read_file(path)); }

std::vector<std::uint8_t> read_idx_labels(const std::string& path) {
    return parse_idx_labels(read_file(path));
}

void LabeledVectorSet::validate() const {
    if (vectors.size() != labels.size()) throw LengthMismatch(vectors.size(), labels.size());
    for (const auto& v : vectors)
        if (v.size() != dim()) throw LengthMismatch(dim(), v.size());
}

std::vector<double> preprocess_scale(std::span<const std::uint8_t> raw, double lo, double hi,
                                     bool negate) {
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double v = lo + (hi - lo) * (static_cast<double>(raw[i]) / 255.0);
        out[i] = negate ? 1.0 - v : v;
    }
    return out;
}

LabeledVectorSet make_labeled_set(const IdxImages& images, std::span<const std::uint8_t> labels,
                                  double lo, double hi) {
    if (labels.size() != images.count) throw LengthMismatch(images.count, labels.size());
    LabeledVectorSet s;
    s.vectors.reserve(images.count);
    for (std::size_t i = 0; i < images.count; ++i) {
        s.vectors.push_back(preprocess_scale(images.image(i), lo, hi, false));
        s.labels.push_back(labels[i]);
    }
    return s;
}

LabeledVectorSet subsample(const LabeledVectorSet& set, std::size_t n, std::uint64_t seed) {
    if (n >= set.size()) return set;
    std::vector<std::size_t> idx(set.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    LabeledVectorSet out;
    for (std::size_t i : idx) {
        out.vectors.push_back(set.vectors[i]);
        out.labels.push_back(set.labels[i]);
    }
    return out;
}

LabeledVectorSet toy_patterns(std::size_t per_class, std::uint64_t seed, double noise) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-noise, noise);
    LabeledVectorSet s;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int cls = static_cast<int>(i % 2);
        std::vector<double> v(16);
        for (std::size_t k = 0; k < 16; ++k) {
            const bool left = (k % 4) < 2;
            const double base = (left == (cls == 0)) ? 0.9 : 0.1;
            v[k] = std::clamp(base + u(rng), 0.02, 0.98);
        }
        s.vectors.push_back(std::move(v));
        s.labels.push_back(cls);
    }
    return s;
}

nlohmann::json report_to_json(const AccuracyReport& r) {
    return nlohmann::json{{"error_rate", r.error_rate}, {"coverage", r.coverage},
                          {"n_test", r.n_test},         {"n_covered", r.n_covered},
                          {"n_errors", r.n_errors},     {"config", r.config}};
}

double lehmer_1nn_score(std::span<const double> candidate, std::span<const double> test,
                        const NnConfig& cfg) {
    if (candidate.size() != test.size()) throw LengthMismatch(candidate.size(), test.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const double w = std::pow(candidate[i], cfg.L);
        const double x = 1.0 - test[i];
        num += w * std::pow(x, cfg.p);
        den += w * std::pow(x, cfg.p - 1.0);
    }
    if (std::fabs(den) < 1e-30) throw DegenerateDenominator(std::fabs(den));
    return num / den;
}

AccuracyReport lehmer_1nn(const LabeledVectorSet& train, const LabeledVectorSet& test,
                          const NnConfig& cfg, const ProgressFn& progress) {
    check_pair(train, test);
    const std::size_t d = train.dim();
    std::vector<double> wl(train.size() * d);
    for (std::size_t j = 0; j < train.size(); ++j)
        for (std::size_t i = 0; i < d; ++i) wl[j * d + i] = std::pow(train.vectors[j][i], cfg.L);

    AccuracyReport r;
    r.predictions.assign(test.size(), -1);
    run_items(test.size(), progress, [&](std::size_t t) {
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = 1.0 - test.vectors[t][i];
        const auto a = powers(x, cfg.p);
        const auto b = powers(x, cfg.p - 1.0);
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < train.size(); ++j) {
            const double* w = wl.data() + j * d;
            const double s = dot(w, a.data(), d) / dot(w, b.data(), d);
            if (s < best) {
                best = s;
                arg = j;
            }
        }
        r.predictions[t] = train.labels[arg];
    });
    finish(r, test);
    r.config = {{"method", "lehmer_1nn"}, {"p", cfg.p}, {"L", cfg.L},
                {"n_train", train.size()}};
    return r;
}

std::vector<double> inside_outside_encode(std::span<const double> v, const InsideOutsideConfig& cfg) {
    std::vector<double> out(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double b = v[i] >= cfg.binarize_at ? cfg.hi : cfg.lo;
        out[i] = b;
        out[v.size() + i] = cfg.lo + cfg.hi - b;
    }
    return out;
}

namespace {

struct IoPowers {
    std::vector<double> or_num, or_den, and_num, and_den;
};

IoPowers io_powers(std::span<const double> x, const InsideOutsideConfig& cfg) {
    return {powers(x, cfg.p_or), powers(x, cfg.p_or - 1.0), powers(x, cfg.p_and),
            powers(x, cfg.p_and - 1.0)};
}

double io_score(const double* w, const IoPowers& xp, std::size_t n, const InsideOutsideConfig& cfg) {
    const double d = dot(w, xp.or_num.data(), n) / dot(w, xp.or_den.data(), n);
    const double c = dot(w, xp.and_num.data(), n) / dot(w, xp.and_den.data(), n);
    const double a = cfg.T - d;
    // unweighted Lehmer at p_or over the pair (not d, c)
    return (std::pow(a, cfg.p_or) + std::pow(c, cfg.p_or)) /
           (std::pow(a, cfg.p_or - 1.0) + std::pow(c, cfg.p_or - 1.0));
}

}  // namespace

double inside_outside_score(std::span<const double> candidate_encoded,
                            std::span<const double> test_encoded, const InsideOutsideConfig& cfg) {
    if (candidate_encoded.size() != test_encoded.size())
        throw LengthMismatch(candidate_encoded.size(), test_encoded.size());
    const auto w = powers(candidate_encoded, cfg.L);
    return io_score(w.data(), io_powers(test_encoded, cfg), w.size(), cfg);
}

AccuracyReport inside_outside(const LabeledVectorSet& train, const LabeledVectorSet& test,
                              const InsideOutsideConfig& cfg, const ProgressFn& progress) {
    check_pair(train, test);
    if (cfg.top_k == 0) throw InvalidArgument("top_k must be positive");
    const std::size_t d2 = 2 * train.dim();
    std::vector<double> wl(train.size() * d2);
    for (std::size_t j = 0; j < train.size(); ++j) {
        const auto e = inside_outside_encode(train.vectors[j], cfg);
        for (std::size_t i = 0; i < d2; ++i) wl[j * d2 + i] = std::pow(e[i], cfg.L);
    }
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t j = 0; j < train.size(); ++j) by_class[train.labels[j]].push_back(j);

    AccuracyReport r;
    r.predictions.assign(test.size(), -1);
    run_items(test.size(), progress, [&](std::size_t t) {
        const auto xp = io_powers(inside_outside_encode(test.vectors[t], cfg), cfg);
        double best = -std::numeric_limits<double>::infinity();
        int best_cls = -1;
        for (const auto& [cls, members] : by_class) {
            std::vector<double> s;
            s.reserve(members.size());
            for (std::size_t j : members) s.push_back(io_score(wl.data() + j * d2, xp, d2, cfg));
            const std::size_t k = std::min(cfg.top_k, s.size());
            std::partial_sort(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), s.end(),
                              std::greater<>());
            double lg = 0.0;
            for (std::size_t i = 0; i < k; ++i) lg += std::log(s[i]);
            const double agg = std::exp(lg / static_cast<double>(k));
            if (agg > best) {
                best = agg;
                best_cls = cls;
            }
        }
        r.predictions[t] = best >= cfg.threshold ? best_cls : -1;
    });
    finish(r, test);
    r.config = {{"method", "inside_outside"}, {"p_or", cfg.p_or},   {"p_and", cfg.p_and},
                {"threshold", cfg.threshold},   {"top_k", cfg.top_k}, {"L", cfg.L},
                {"binarize_at", cfg.binarize_at}, {"n_train", train.size()}};
    return r;
}

}  // namespace multiplet
