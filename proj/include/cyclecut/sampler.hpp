#ifndef CYCLECUT_SAMPLER_HPP
#define CYCLECUT_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclecut/chain.hpp"
#include "cyclecut/cuts.hpp"
#include "cyclecut/embedding.hpp"
#include "cyclecut/instance.hpp"
#include "cyclecut/multigraph.hpp"
#include "cyclecut/rng.hpp"

namespace cyclecut {

/// Exact incoming distribution and chain parameters for every cut.
struct CutPlan {
    StateDistribution p_root;
    std::vector<StateDistribution> dist;  ///< per node; post-swap for twisted cuts
    std::vector<ChainParams> params;      ///< valid for composite nodes
    std::vector<char> composite;
};

/// Top-down pass: the root cut gets p_root, every other cut gets its parent's
/// chain image, swapped when the cut is twisted. Every stored distribution is
/// verified to lie in R.
CutPlan propagate_distributions(const Hierarchy& h, const FrameSet& fs,
                                const StateDistribution& p_root);

/// Everything needed to run the sampler on an instance.
struct Pipeline {
    Instance instance;
    SupportGraph support;
    Hierarchy hierarchy;
    FrameSet frames;
    CutPlan plan;
};

Pipeline make_pipeline(Instance inst, std::optional<int> root_override = std::nullopt,
                       const StateDistribution& p_root = default_root_distribution(),
                       Orientation orient = Orientation::canonical);

/// Draws the root pattern and fills every cut top-down; the returned
/// sub-multigraph always has even degrees and is connected spanning.
/// Requires p_root with p4 = 0 (root boundary edges of even parity are
/// dropped, which is only safe when the all-even root pattern never occurs).
MultiplicityMap sample_multiplicities(const Pipeline& p, RandomSource& rnd);

struct TourSample {
    MultiplicityMap mult;
    std::vector<int> walk;
    Rational cost;
};

/// One full sample: multiplicities, Eulerian walk, exact cost.
TourSample sample_tour(const Pipeline& p, std::uint64_t seed);

Rational tour_cost(const Multigraph& g, const MultiplicityMap& m);

/// Exhaustive expansion of every random branch with exact probabilities.
struct Outcome {
    MultiplicityMap mult;
    Rational probability;
};

struct OutcomeDistribution {
    std::vector<Outcome> outcomes;
    Rational total_probability;
    std::vector<Rational> edge_expectation;  ///< per edge id
    Rational expected_cost;
    /// Per node: exact probability of each (state, variant) pattern.
    std::vector<std::array<std::array<Rational, 2>, 4>> pattern_marginals;
};

OutcomeDistribution exact_outcome_distribution(const Pipeline& p, int max_branch_pairs = 12);

/// Theorem-backed closed form: E→ edges are used exactly 2/3 in expectation,
/// root boundary edges exactly 1/2. Also checks the E→/δ(r) edge partition.
struct Expectation {
    std::vector<Rational> edge_expectation;
    Rational expected_cost;
};

Expectation exact_expectation(const Pipeline& p);

/// Monte Carlo usage report over N independent samples.
struct UsageStats {
    long samples = 0;
    std::vector<long> edge_usage_total;  ///< Σ multiplicities per edge id
    Rational cost_total;
    Rational cost_sq_total;
    /// Per node: counts of each (state, variant).
    std::vector<std::array<std::array<long, 2>, 4>> pattern_counts;
    long parity_violations = 0;
    long connectivity_violations = 0;

    double edge_mean(int eid) const {
        return static_cast<double>(edge_usage_total[static_cast<std::size_t>(eid)]) /
               static_cast<double>(samples);
    }
    double mean_cost() const { return cost_total.to_double() / static_cast<double>(samples); }
    double cost_stderr() const;
};

UsageStats usage_stats(const Pipeline& p, long n_samples, std::uint64_t seed, int jobs = 1);

}  // namespace cyclecut

#endif
