#include "cyclecut/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cyclecut {

CutPlan propagate_distributions(const Hierarchy& h, const FrameSet& fs,
                                const StateDistribution& p_root) {
    CycleCutReport report = verify_cycle_cut_instance(h);
    require(report.ok, Errc::degree_cut_present,
            std::to_string(report.offenders.size()) + " degree cut(s) block the sampler");
    require(region_contains(p_root), Errc::region_violation,
            "root distribution outside R: " + p_root.str());

    CutPlan plan;
    plan.p_root = p_root;
    plan.dist.assign(static_cast<std::size_t>(h.size()), StateDistribution{});
    plan.params.assign(static_cast<std::size_t>(h.size()), ChainParams{});
    plan.composite.assign(static_cast<std::size_t>(h.size()), 0);

    plan.dist[static_cast<std::size_t>(h.top())] = p_root;
    // nodes are sorted parents-first, so one ascending pass suffices
    for (int i = 0; i < h.size(); ++i) {
        if (h.node(i).is_singleton()) continue;
        plan.composite[static_cast<std::size_t>(i)] = 1;
        const Frame& frame = fs.frame(i);
        const StateDistribution& incoming = plan.dist[static_cast<std::size_t>(i)];
        require(region_contains(incoming), Errc::region_violation,
                "cut distribution left R: " + incoming.str());
        plan.params[static_cast<std::size_t>(i)] = select_params(incoming, frame.k(), frame.even());
        StateDistribution image = apply_step(incoming, plan.params[static_cast<std::size_t>(i)]);
        for (int child : frame.chain) {
            StateDistribution d =
                fs.twist(child) == Twist::twisted ? swap12(image) : image;
            require(region_contains(d), Errc::region_violation,
                    "child distribution left R: " + d.str());
            plan.dist[static_cast<std::size_t>(child)] = d;
        }
    }
    return plan;
}

Pipeline make_pipeline(Instance inst, std::optional<int> root_override,
                       const StateDistribution& p_root, Orientation orient) {
    validate_instance(inst);
    SupportGraph support = support_multigraph(inst);
    int root = root_override.value_or(inst.root_or_default());
    Hierarchy hierarchy = build_hierarchy(support.graph, root);
    FrameSet frames = build_frames(hierarchy, support.graph, orient);
    CutPlan plan = propagate_distributions(hierarchy, frames, p_root);
    return {std::move(inst), std::move(support), std::move(hierarchy), std::move(frames),
            std::move(plan)};
}

namespace {

/// Applies the per-state connection rules of one cut and recurses into its
/// composite children. Boundary multiplicities of the cut must already be
/// written into `mult`.
struct Filler {
    const Pipeline& p;
    RandomSource& rnd;
    MultiplicityMap& mult;

    int m(int eid) const { return mult[static_cast<std::size_t>(eid)]; }
    void set(int eid, int value) { mult[static_cast<std::size_t>(eid)] = static_cast<std::uint8_t>(value); }

    void pick_one(const PairEdges& pe, bool top) {
        set(pe.top, top ? 1 : 0);
        set(pe.bottom, top ? 0 : 1);
    }
    void use_both(const PairEdges& pe) {
        set(pe.top, 1);
        set(pe.bottom, 1);
    }
    void double_one(const PairEdges& pe, bool top) {
        set(pe.top, top ? 2 : 0);
        set(pe.bottom, top ? 0 : 2);
    }
    void double_uniform(const PairEdges& pe) { double_one(pe, rnd.uniform(2) == 0); }

    void fill(int node) {
        const Frame& frame = p.frames.frame(node);
        const auto roles = p.frames.roles(node);
        std::array<int, 4> parities{};
        for (int i = 0; i < 4; ++i)
            parities[static_cast<std::size_t>(i)] = m(roles[static_cast<std::size_t>(i)]) % 2;
        const Pattern pattern = classify_pattern(parities);
        const ChainParams& params = p.plan.params[static_cast<std::size_t>(node)];
        const auto& pairs = frame.pairs;
        const int k = frame.k();

        // positions of the incoming odd edges, read off the roles
        const bool left_odd_top = parities[0] == 1;   // UL
        const bool right_odd_top = parities[2] == 1;  // UR
        const bool left_full = parities[0] == 1 && parities[1] == 1;
        const bool right_full = parities[2] == 1 && parities[3] == 1;
        const bool variant_a = pattern.variant == PatternVariant::a;
        const Rational alpha = params.alpha[static_cast<std::size_t>(pattern.state)];

        auto anti_sweep = [&]() {
            bool cur = left_odd_top;
            for (const auto& pe : pairs) {
                pick_one(pe, !cur);
                cur = !cur;
            }
        };
        auto aligned_fill = [&]() {
            for (const auto& pe : pairs) pick_one(pe, left_odd_top);
        };
        auto forced_parity_left = [&](int from, int to, bool odd_in) {
            // P_j doubled when the child left of it is entered oddly, so every
            // swept child ends with exactly one fully-odd side
            bool odd = odd_in;
            for (int j = from; j < to; ++j) {
                if (odd)
                    double_uniform(pairs[static_cast<std::size_t>(j)]);
                else
                    use_both(pairs[static_cast<std::size_t>(j)]);
                odd = !odd;
            }
        };
        auto forced_parity_right = [&](int downto, bool odd_in) {
            bool odd = odd_in;
            for (int j = k - 2; j >= downto; --j) {
                if (odd)
                    double_uniform(pairs[static_cast<std::size_t>(j)]);
                else
                    use_both(pairs[static_cast<std::size_t>(j)]);
                odd = !odd;
            }
        };

        if (frame.even()) {
            switch (pattern.state) {
            case PatternState::s1:
                for (const auto& pe : pairs) pick_one(pe, rnd.uniform(2) == 0);
                break;
            case PatternState::s2:
                if (rnd.bernoulli(alpha))
                    anti_sweep();
                else
                    aligned_fill();
                break;
            case PatternState::s3:
                for (const auto& pe : pairs) {
                    if (rnd.bernoulli(Rational(1, 2)))
                        use_both(pe);
                    else
                        double_uniform(pe);
                }
                break;
            case PatternState::s4:
                if (rnd.bernoulli(alpha)) {
                    forced_parity_left(0, k - 1, left_full);
                } else if (variant_a) {
                    for (const auto& pe : pairs) use_both(pe);
                } else {
                    for (const auto& pe : pairs) double_uniform(pe);
                }
                break;
            }
        } else {
            switch (pattern.state) {
            case PatternState::s1:
                if (rnd.bernoulli(alpha)) {
                    anti_sweep();
                } else {
                    int i = rnd.uniform(k);
                    for (int j = 0; j < k - 1; ++j)
                        pick_one(pairs[static_cast<std::size_t>(j)],
                                 j < i ? left_odd_top : right_odd_top);
                }
                break;
            case PatternState::s2:
                if (rnd.bernoulli(alpha)) {
                    int i = rnd.uniform(k);
                    for (int j = 0; j < i; ++j)
                        pick_one(pairs[static_cast<std::size_t>(j)],
                                 (j % 2 == 0) ? !left_odd_top : left_odd_top);
                    for (int j = k - 2; j >= i; --j)
                        pick_one(pairs[static_cast<std::size_t>(j)],
                                 ((k - 2 - j) % 2 == 0) ? !right_odd_top : right_odd_top);
                } else {
                    aligned_fill();
                }
                break;
            case PatternState::s3:
                if (rnd.bernoulli(alpha)) {
                    // alternating doubled/used pairs starting next to the
                    // incoming side; every child lands in state 2
                    for (int j = 0; j < k - 1; ++j) {
                        bool dbl = variant_a ? (j % 2 == 0) : ((k - 2 - j) % 2 == 0);
                        if (dbl)
                            double_uniform(pairs[static_cast<std::size_t>(j)]);
                        else
                            use_both(pairs[static_cast<std::size_t>(j)]);
                    }
                } else {
                    int i = rnd.uniform(k);
                    for (int j = 0; j < k - 1; ++j) {
                        bool use = variant_a ? (j < i) : (j >= i);
                        if (use)
                            use_both(pairs[static_cast<std::size_t>(j)]);
                        else
                            double_uniform(pairs[static_cast<std::size_t>(j)]);
                    }
                }
                break;
            case PatternState::s4:
                if (rnd.bernoulli(alpha)) {
                    int i = rnd.uniform(k);
                    forced_parity_left(0, i, left_full);
                    forced_parity_right(i, right_full);
                } else if (variant_a) {
                    for (const auto& pe : pairs) use_both(pe);
                } else {
                    for (const auto& pe : pairs) double_uniform(pe);
                }
                break;
            }
        }

        for (int child : frame.chain)
            if (!p.hierarchy.node(child).is_singleton()) fill(child);
    }
};

}  // namespace

MultiplicityMap sample_multiplicities(const Pipeline& p, RandomSource& rnd) {
    require(p.plan.p_root[3].is_zero(), Errc::param_out_of_range,
            "sampling requires a root distribution with p4 = 0");
    MultiplicityMap mult(static_cast<std::size_t>(p.support.graph.edge_count()), 0);
    const int top = p.hierarchy.top();
    int state = rnd.weighted4(p.plan.p_root.p);
    int variant = rnd.uniform(2);
    std::array<int, 4> parities = pattern_parities(static_cast<PatternState>(state),
                                                   static_cast<PatternVariant>(variant));
    const auto& roles = p.frames.roles(top);
    // root boundary: odd edges used once, even edges dropped (p4 = 0 keeps
    // the all-even root pattern out, so this never disconnects the root)
    for (int i = 0; i < 4; ++i)
        mult[static_cast<std::size_t>(roles[static_cast<std::size_t>(i)])] =
            static_cast<std::uint8_t>(parities[static_cast<std::size_t>(i)]);
    Filler filler{p, rnd, mult};
    filler.fill(top);
    return mult;
}

Rational tour_cost(const Multigraph& g, const MultiplicityMap& m) {
    Rational total;
    for (const auto& e : g.edges())
        if (m[static_cast<std::size_t>(e.id)] > 0)
            total += e.cost * Rational(m[static_cast<std::size_t>(e.id)]);
    return total;
}

TourSample sample_tour(const Pipeline& p, std::uint64_t seed) {
    RngSource rnd(substream_seed(seed, 0));
    MultiplicityMap mult = sample_multiplicities(p, rnd);
    std::vector<int> walk = euler_circuit(p.support.graph, mult);
    Rational cost = tour_cost(p.support.graph, mult);
    return {std::move(mult), std::move(walk), cost};
}

namespace {

/// Replays a recorded prefix of decisions, then extends depth-first; driving
/// the sampler repeatedly through this source enumerates every outcome with
/// its exact probability. Zero-probability branches are never taken.
class EnumerationSource : public RandomSource {
public:
    bool bernoulli(const Rational& prob) override {
        return advance({prob, rat(1) - prob}) == 0;
    }
    int uniform(int k) override {
        return advance(std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, k)));
    }
    int weighted4(const std::array<Rational, 4>& prob) override {
        return advance({prob[0], prob[1], prob[2], prob[3]});
    }

    Rational leaf_probability() const {
        Rational prob(1);
        for (const auto& step : trail_)
            prob *= step.probs[static_cast<std::size_t>(step.taken)];
        return prob;
    }

    /// Moves to the next unexplored leaf; false when the tree is exhausted.
    bool next_leaf() {
        while (!trail_.empty()) {
            Step& step = trail_.back();
            int nxt = step.taken + 1;
            while (nxt < static_cast<int>(step.probs.size()) &&
                   step.probs[static_cast<std::size_t>(nxt)].is_zero())
                ++nxt;
            if (nxt < static_cast<int>(step.probs.size())) {
                step.taken = nxt;
                pos_ = 0;
                return true;
            }
            trail_.pop_back();
        }
        return false;
    }

private:
    struct Step {
        std::vector<Rational> probs;
        int taken;
    };

    int advance(std::vector<Rational> probs) {
        if (pos_ < trail_.size()) {
            // replay
            require(trail_[pos_].probs == probs, Errc::frame_mismatch,
                    "enumeration replay diverged");
            return trail_[pos_++].taken;
        }
        int first = 0;
        while (first < static_cast<int>(probs.size()) &&
               probs[static_cast<std::size_t>(first)].is_zero())
            ++first;
        require(first < static_cast<int>(probs.size()), Errc::param_out_of_range,
                "all branch probabilities are zero");
        trail_.push_back({std::move(probs), first});
        ++pos_;
        return first;
    }

    std::vector<Step> trail_;
    std::size_t pos_ = 0;
};

}  // namespace

OutcomeDistribution exact_outcome_distribution(const Pipeline& p, int max_branch_pairs) {
    int total_pairs = 0;
    for (const auto& frame : p.frames.frames()) total_pairs += frame.k() - 1;
    require(total_pairs <= max_branch_pairs, Errc::too_large,
            "instance has " + std::to_string(total_pairs) + " connecting pairs, cap is " +
                std::to_string(max_branch_pairs));

    OutcomeDistribution out;
    out.total_probability = rat(0);
    out.edge_expectation.assign(static_cast<std::size_t>(p.support.graph.edge_count()), rat(0));
    out.expected_cost = rat(0);
    out.pattern_marginals.assign(static_cast<std::size_t>(p.hierarchy.size()),
                                 std::array<std::array<Rational, 2>, 4>{});

    EnumerationSource source;
    bool more = true;
    while (more) {
        MultiplicityMap mult = sample_multiplicities(p, source);
        Rational prob = source.leaf_probability();
        out.total_probability += prob;
        for (int eid = 0; eid < p.support.graph.edge_count(); ++eid)
            out.edge_expectation[static_cast<std::size_t>(eid)] +=
                prob * Rational(mult[static_cast<std::size_t>(eid)]);
        out.expected_cost += prob * tour_cost(p.support.graph, mult);
        for (int node = 0; node < p.hierarchy.size(); ++node) {
            const auto& roles = p.frames.roles(node);
            std::array<int, 4> parities{};
            for (int i = 0; i < 4; ++i)
                parities[static_cast<std::size_t>(i)] =
                    mult[static_cast<std::size_t>(roles[static_cast<std::size_t>(i)])] % 2;
            Pattern pattern = classify_pattern(parities);
            out.pattern_marginals[static_cast<std::size_t>(node)]
                                 [static_cast<std::size_t>(pattern.state)]
                                 [static_cast<std::size_t>(pattern.variant)] += prob;
        }
        out.outcomes.push_back({std::move(mult), prob});
        more = source.next_leaf();
    }
    return out;
}

Expectation exact_expectation(const Pipeline& p) {
    const int m = p.support.graph.edge_count();
    Expectation e;
    e.edge_expectation.assign(static_cast<std::size_t>(m), Rational(-1));
    const Rational two_thirds(2, 3), half(1, 2);
    // δ(r) and the E→ sets partition the edges; assign each edge exactly once
    for (int eid : p.hierarchy.node(p.hierarchy.top()).boundary) {
        require(e.edge_expectation[static_cast<std::size_t>(eid)] == Rational(-1),
                Errc::frame_mismatch, "edge assigned twice");
        e.edge_expectation[static_cast<std::size_t>(eid)] = half;
    }
    for (int node = 0; node < p.hierarchy.size(); ++node) {
        if (p.hierarchy.node(node).is_singleton()) continue;
        const StateDistribution& q = p.plan.dist[static_cast<std::size_t>(node)];
        Rational usage = rat(1) - (q[0] + q[1]) * half;
        require(usage == two_thirds, Errc::region_violation,
                "cut distribution does not give 2/3 usage");
        for (int eid : p.hierarchy.node(node).internal) {
            require(e.edge_expectation[static_cast<std::size_t>(eid)] == Rational(-1),
                    Errc::frame_mismatch, "edge assigned twice");
            e.edge_expectation[static_cast<std::size_t>(eid)] = usage;
        }
    }
    e.expected_cost = rat(0);
    for (const auto& edge : p.support.graph.edges()) {
        require(e.edge_expectation[static_cast<std::size_t>(edge.id)] != Rational(-1),
                Errc::frame_mismatch, "edge not covered by delta(r) or any E→ set");
        e.expected_cost += edge.cost * e.edge_expectation[static_cast<std::size_t>(edge.id)];
    }
    return e;
}

double UsageStats::cost_stderr() const {
    double n = static_cast<double>(samples);
    double mean = mean_cost();
    double var = (cost_sq_total.to_double() - n * mean * mean) / (n - 1.0);
    if (var < 0) var = 0;
    return std::sqrt(var / n);
}

namespace {

UsageStats usage_block(const Pipeline& p, long begin, long end, std::uint64_t seed) {
    const int m = p.support.graph.edge_count();
    UsageStats stats;
    stats.samples = end - begin;
    stats.edge_usage_total.assign(static_cast<std::size_t>(m), 0);
    stats.cost_total = rat(0);
    stats.cost_sq_total = rat(0);
    stats.pattern_counts.assign(static_cast<std::size_t>(p.hierarchy.size()),
                                std::array<std::array<long, 2>, 4>{});
    for (long i = begin; i < end; ++i) {
        RngSource rnd(substream_seed(seed, static_cast<std::uint64_t>(i)));
        MultiplicityMap mult = sample_multiplicities(p, rnd);
        bool parity_ok = true;
        for (int v = 0; v < p.support.graph.vertex_count(); ++v)
            if (degree_under(p.support.graph, mult, v) % 2 != 0) parity_ok = false;
        if (!parity_ok) ++stats.parity_violations;
        if (!is_connected_spanning(p.support.graph, mult)) ++stats.connectivity_violations;
        for (int eid = 0; eid < m; ++eid)
            stats.edge_usage_total[static_cast<std::size_t>(eid)] +=
                mult[static_cast<std::size_t>(eid)];
        Rational cost = tour_cost(p.support.graph, mult);
        stats.cost_total += cost;
        stats.cost_sq_total += cost * cost;
        for (int node = 0; node < p.hierarchy.size(); ++node) {
            const auto& roles = p.frames.roles(node);
            std::array<int, 4> parities{};
            for (int j = 0; j < 4; ++j)
                parities[static_cast<std::size_t>(j)] =
                    mult[static_cast<std::size_t>(roles[static_cast<std::size_t>(j)])] % 2;
            Pattern pattern = classify_pattern(parities);
            stats.pattern_counts[static_cast<std::size_t>(node)]
                                [static_cast<std::size_t>(pattern.state)]
                                [static_cast<std::size_t>(pattern.variant)] += 1;
        }
    }
    return stats;
}

void merge_into(UsageStats& into, const UsageStats& part) {
    into.samples += part.samples;
    for (std::size_t i = 0; i < into.edge_usage_total.size(); ++i)
        into.edge_usage_total[i] += part.edge_usage_total[i];
    into.cost_total += part.cost_total;
    into.cost_sq_total += part.cost_sq_total;
    for (std::size_t n = 0; n < into.pattern_counts.size(); ++n)
        for (std::size_t s = 0; s < 4; ++s)
            for (std::size_t v = 0; v < 2; ++v)
                into.pattern_counts[n][s][v] += part.pattern_counts[n][s][v];
    into.parity_violations += part.parity_violations;
    into.connectivity_violations += part.connectivity_violations;
}

}  // namespace

UsageStats usage_stats(const Pipeline& p, long n_samples, std::uint64_t seed, int jobs) {
    require(n_samples >= 1, Errc::param_out_of_range, "need at least one sample");
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<long>(n_samples, 64))));
    if (jobs == 1) return usage_block(p, 0, n_samples, seed);

    // contiguous blocks merged in index order; all accumulators are exact, so
    // the result is identical for any job count
    std::vector<UsageStats> parts(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    long chunk = (n_samples + jobs - 1) / jobs;
    for (int b = 0; b < jobs; ++b) {
        long begin = b * chunk;
        long end = std::min<long>(n_samples, begin + chunk);
        workers.emplace_back([&, b, begin, end]() {
            parts[static_cast<std::size_t>(b)] = usage_block(p, begin, end, seed);
        });
    }
    for (auto& w : workers) w.join();
    UsageStats total = std::move(parts[0]);
    for (int b = 1; b < jobs; ++b) merge_into(total, parts[static_cast<std::size_t>(b)]);
    return total;
}

}  // namespace cyclecut
