#pragma once

// Seeded synthetic corpora and the study of how the journal indicator's
// year-to-year variability depends on the window length.
//
// Random numbers come from xoshiro256** seeded through SplitMix64, with all
// variates derived by explicitly specified transforms (Box-Muller normals,
// Knuth/PTRS Poisson, Marsaglia-Tsang gamma), so a configuration reproduces
// the same corpus on any platform. Journal j draws from its own stream seeded
// with splitmix64(seed ^ splitmix64(j + 1)); adding journals never perturbs
// the draws of existing ones.

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jsa/corpus.hpp"

namespace jsa::synth {

/// SplitMix64 output function applied to `x + golden gamma`.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for substream `index` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1].
    double uniform_pos() noexcept;
    double normal() noexcept;
    double lognormal(double mu, double sigma) noexcept;
    double gamma(double shape, double scale) noexcept;
    std::int64_t poisson(double mean) noexcept;
    /// Failures before r successes with success probability p (gamma-Poisson).
    std::int64_t negative_binomial(double r, double p) noexcept;
    bool bernoulli(double p) noexcept;

private:
    std::array<std::uint64_t, 4> s_;
};

enum class AttentionModel { lognormal, negative_binomial };
enum class CountModel { poisson, fixed };

struct SynthConfig {
    std::size_t n_journals = 20;
    YearRange years{2012, 2021};
    double articles_per_journal_year = 10.0;
    CountModel count_model = CountModel::poisson;
    AttentionModel attention_model = AttentionModel::lognormal;
    double lognormal_mu = 0.0;
    double lognormal_sigma = 1.5;
    double nb_r = 0.5;
    double nb_p = 0.1;
    std::uint64_t seed = 1;
};

/// Throws UsageError for out-of-domain parameters.
void validate(const SynthConfig& config);

SynthConfig read_config(std::istream& in);
void write_config(std::ostream& out, const SynthConfig& config);

/// Generated articles with real-valued attention, before integerisation.
struct Panel {
    std::vector<std::string> journal_ids;
    YearRange years;
    std::vector<ArticleRecord> articles;  // attention field left at 0
    std::vector<double> attention;        // parallel to articles
};

Panel generate_panel(const SynthConfig& config);

/// Round-half-to-even, clamped at zero.
std::int64_t integerize(double score) noexcept;

/// Articles carry integerised attention; journals get placeholder records.
Corpus to_corpus(const Panel& panel);

Corpus generate_corpus(const SynthConfig& config);

struct VariabilityReport {
    int window = 1;
    std::map<std::string, double> per_journal_cv;
    double mean_cv = 0.0;  // NaN when no journal was evaluable
    std::size_t n_journals_evaluated = 0;
    /// Journals with fewer than two indicator values or a zero mean.
    std::vector<std::string> excluded;
};

/// Per-journal (sum, count) of attention by publication year. Built from a
/// corpus (integer scores) or directly from a panel (real-valued scores).
struct ScoreGrid {
    std::vector<std::string> journal_ids;
    YearRange years;
    std::vector<std::vector<double>> sums;              // [journal][year - first]
    std::vector<std::vector<std::int64_t>> counts;      // [journal][year - first]

    static ScoreGrid from_corpus(const Corpus& corpus);
    static ScoreGrid from_panel(const Panel& panel, bool integer_scores);
};

/// Coefficient of variation (sample SD / mean) of each journal's indicator
/// series over every edition year whose window fits in the grid's year span.
/// A window equal to the span leaves one point per journal, so every journal
/// is excluded. Throws UsageError if the window exceeds the span.
VariabilityReport window_variability(const ScoreGrid& grid, int window,
                                     const std::vector<std::string>* universe = nullptr);
VariabilityReport window_variability(const Corpus& corpus, int window);

/// One report per window over a common journal universe: the journals
/// evaluable at the largest window. Throws UsageError on an empty list.
std::vector<VariabilityReport> compare_windows(const ScoreGrid& grid, const std::vector<int>& windows);
std::vector<VariabilityReport> compare_windows(const Corpus& corpus, const std::vector<int>& windows);

struct StudyResult {
    std::vector<int> windows;
    /// mean_cv[run][w]
    std::vector<std::vector<double>> mean_cv;
    /// Runs where mean_cv strictly decreases across the whole window list.
    std::size_t strictly_decreasing = 0;
    /// Runs where mean_cv never increases across the window list.
    std::size_t non_increasing = 0;
    /// Runs where the last window's mean_cv is below the first window's.
    std::size_t last_below_first = 0;
};

/// Repeat compare_windows on `runs` corpora generated with
/// derive_seed(config.seed, run). Runs are spread over `threads` workers; the
/// result is independent of the thread count.
StudyResult window_stability_study(const SynthConfig& config, const std::vector<int>& windows,
                                   std::size_t runs, unsigned threads = 1, bool integer_scores = true);

}  // namespace jsa::synth
