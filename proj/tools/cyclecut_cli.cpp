// Command-line front end: instance generation, validation, hierarchy and
// frame inspection, exact expectation reports, Monte Carlo sampling, region
// analysis, and the exhaustive outcome oracle.
//
// Exit codes: 0 success, 1 property violation detected (degree cut present,
// region violation, nonzero sample violation counters, region check failed),
// 2 invalid input or usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclecut/chain.hpp"
#include "cyclecut/cuts.hpp"
#include "cyclecut/embedding.hpp"
#include "cyclecut/instance.hpp"
#include "cyclecut/rng.hpp"
#include "cyclecut/sampler.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cyclecut;

constexpr const char* kSchemaVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail(Errc::parse_error, "cannot write '" + path + "'");
    out << content;
}

void emit_report(const std::string& out_path, json report) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

json base_report(const std::string& command) {
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = command;
    return report;
}

StateDistribution parse_distribution(const std::string& text) {
    StateDistribution p;
    std::stringstream ss(text);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        require(i < 4, Errc::parse_error, "distribution needs exactly 4 components");
        p[i++] = Rational::parse(part);
    }
    require(i == 4, Errc::parse_error, "distribution needs exactly 4 components");
    require(p.is_distribution(), Errc::parse_error, "components do not form a distribution");
    return p;
}

StateDistribution parse_root_distribution(const std::string& text) {
    StateDistribution p = parse_distribution(text);
    require(region_contains(p), Errc::not_in_region, "p_root must lie in R");
    require(p[3].is_zero(), Errc::param_out_of_range, "p_root must have p4 = 0");
    return p;
}

json distribution_json(const StateDistribution& p) {
    return json::array({p[0].str(), p[1].str(), p[2].str(), p[3].str()});
}

const char* kind_name(CutKind kind) {
    switch (kind) {
    case CutKind::singleton: return "singleton";
    case CutKind::cycle_cut: return "cycle";
    case CutKind::degree_cut: return "degree";
    }
    return "?";
}

json members_json(const VertexSet& members) {
    json arr = json::array();
    for (int v : members) arr.push_back(v);
    return arr;
}

struct PipelineArgs {
    std::string instance_path;
    int root = -1;  // -1: use the instance's root (or vertex 0)
    std::string p_root_text;

    Pipeline build() const {
        Instance inst = load_instance(read_file(instance_path));
        std::optional<int> root_override;
        if (root >= 0) root_override = root;
        StateDistribution p_root = p_root_text.empty() ? default_root_distribution()
                                                       : parse_root_distribution(p_root_text);
        return make_pipeline(std::move(inst), root_override, p_root);
    }
};

void add_pipeline_options(CLI::App* cmd, PipelineArgs& args) {
    cmd->add_option("file", args.instance_path, "instance JSON file")->required();
    cmd->add_option("--root", args.root, "root vertex (default: instance root, else 0)");
    cmd->add_option("--p-root", args.p_root_text,
                    "root distribution 'p1,p2,p3,p4' in R with p4 = 0");
}

json hierarchy_json(const Pipeline& p) {
    json nodes = json::array();
    for (int i = 0; i < p.hierarchy.size(); ++i) {
        const HierarchyNode& node = p.hierarchy.node(i);
        json entry;
        entry["id"] = i;
        entry["members"] = members_json(node.members);
        entry["kind"] = kind_name(node.kind);
        entry["parent"] = node.parent;
        entry["boundary"] = node.boundary;
        if (!node.is_singleton()) {
            entry["internal"] = node.internal;
            const Frame& frame = p.frames.frame(i);
            json fr;
            fr["chain"] = frame.chain;
            json pairs = json::array();
            for (const auto& pe : frame.pairs) pairs.push_back({{"top", pe.top}, {"bottom", pe.bottom}});
            fr["pairs"] = pairs;
            fr["roles"] = {{"UL", frame.ul}, {"DL", frame.dl}, {"UR", frame.ur}, {"DR", frame.dr}};
            fr["delta_left"] = frame.delta_left;
            fr["twist"] = frame.twist == Twist::twisted ? "twisted" : "straight";
            entry["frame"] = fr;
        }
        nodes.push_back(entry);
    }
    return nodes;
}

json edge_json(const Multigraph& g, int eid) {
    const MultiEdge& e = g.edge(eid);
    return json{{"id", e.id}, {"u", e.u}, {"v", e.v}, {"cost", e.cost.str()}};
}

int cmd_gen(const std::string& family, int k, std::uint64_t seed, int leaves, bool unit_costs,
            const std::string& out_path) {
    Instance inst;
    if (family == "fig1") {
        inst = gen_figure1(k);
    } else if (family == "random") {
        inst = gen_random_cyclecut(random_blueprint(seed, leaves), seed, unit_costs);
    } else {
        fail(Errc::parse_error, "unknown family '" + family + "'");
    }
    std::string text = save_instance(inst);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return kExitOk;
}

int cmd_check(const std::string& path, const std::string& out_path) {
    json report = base_report("check");
    try {
        Instance inst = load_instance(read_file(path));
        report["valid"] = true;
        report["n"] = inst.n;
        report["support_edges"] = static_cast<int>(inst.edges.size());
        report["lp_value"] = lp_value(inst).str();
        SupportGraph sg = support_multigraph(inst);
        report["multigraph_edges"] = sg.graph.edge_count();
        report["min_cut"] = global_min_cut_value(sg.graph);
        emit_report(out_path, report);
        return kExitOk;
    } catch (const Error& err) {
        report["valid"] = false;
        report["error"] = errc_name(err.code());
        report["message"] = err.what();
        emit_report(out_path, report);
        std::cerr << err.what() << "\n";
        return kExitUsage;
    }
}

int cmd_hierarchy(const std::string& path, int root, const std::string& dot_path,
                  const std::string& out_path) {
    Instance inst = load_instance(read_file(path));
    SupportGraph sg = support_multigraph(inst);
    int r = root >= 0 ? root : inst.root_or_default();
    Hierarchy h = build_hierarchy(sg.graph, r);
    CycleCutReport verdict = verify_cycle_cut_instance(h);

    json report = base_report("hierarchy");
    report["root"] = r;
    report["cycle_cut_instance"] = verdict.ok;
    if (!dot_path.empty()) write_file(dot_path, hierarchy_to_dot(h));
    if (!verdict.ok) {
        json offenders = json::array();
        for (int node : verdict.offenders) offenders.push_back(members_json(h.node(node).members));
        report["error"] = errc_name(Errc::degree_cut_present);
        report["degree_cuts"] = offenders;
        json nodes = json::array();
        for (int i = 0; i < h.size(); ++i) {
            const HierarchyNode& node = h.node(i);
            nodes.push_back({{"id", i},
                             {"members", members_json(node.members)},
                             {"kind", kind_name(node.kind)},
                             {"parent", node.parent}});
        }
        report["nodes"] = nodes;
        emit_report(out_path, report);
        std::cerr << "degree cut present\n";
        return kExitViolation;
    }
    FrameSet frames = build_frames(h, sg.graph);
    Pipeline p{std::move(inst), std::move(sg), std::move(h), std::move(frames), {}};
    p.plan = propagate_distributions(p.hierarchy, p.frames, default_root_distribution());
    report["nodes"] = hierarchy_json(p);
    emit_report(out_path, report);
    return kExitOk;
}

int cmd_expect(const PipelineArgs& args, const std::string& out_path) {
    Pipeline p = args.build();
    Expectation e = exact_expectation(p);
    Rational lp = lp_value(p.instance);
    Rational bound = Rational(4, 3) * lp;

    json report = base_report("expect");
    report["root"] = p.hierarchy.root_vertex;
    report["p_root"] = distribution_json(p.plan.p_root);
    report["lp_value"] = lp.str();
    report["expected_cost"] = e.expected_cost.str();
    report["four_thirds_lp"] = bound.str();
    report["bound_holds"] = e.expected_cost <= bound;
    report["ratio"] = fmt12(e.expected_cost.to_double() / lp.to_double());
    json edges = json::array();
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
        json entry = edge_json(p.support.graph, eid);
        entry["expected_multiplicity"] = e.edge_expectation[static_cast<std::size_t>(eid)].str();
        edges.push_back(entry);
    }
    report["edges"] = edges;
    json cuts = json::array();
    for (int i = 0; i < p.hierarchy.size(); ++i) {
        if (p.hierarchy.node(i).is_singleton()) continue;
        const Frame& frame = p.frames.frame(i);
        const ChainParams& params = p.plan.params[static_cast<std::size_t>(i)];
        json entry;
        entry["id"] = i;
        entry["members"] = members_json(p.hierarchy.node(i).members);
        entry["children"] = frame.k();
        entry["parity"] = frame.even() ? "even" : "odd";
        entry["twist"] = frame.twist == Twist::twisted ? "twisted" : "straight";
        entry["distribution"] = distribution_json(p.plan.dist[static_cast<std::size_t>(i)]);
        json pj;
        if (params.even) {
            pj["z"] = params.z.str();
            pj["w"] = params.w.str();
        } else {
            pj["x"] = params.x.str();
            pj["y"] = params.y.str();
            pj["z"] = params.z.str();
            pj["w"] = params.w.str();
        }
        pj["alpha"] = json::array({params.alpha[0].str(), params.alpha[1].str(),
                                   params.alpha[2].str(), params.alpha[3].str()});
        entry["params"] = pj;
        cuts.push_back(entry);
    }
    report["cuts"] = cuts;
    emit_report(out_path, report);
    return e.expected_cost <= bound ? kExitOk : kExitViolation;
}

int cmd_sample(const PipelineArgs& args, long n, std::uint64_t seed, int jobs,
               const std::string& out_path) {
    Pipeline p = args.build();
    UsageStats stats = usage_stats(p, n, seed, jobs);
    Expectation e = exact_expectation(p);

    json report = base_report("sample");
    report["samples"] = stats.samples;
    report["seed"] = seed;
    report["root"] = p.hierarchy.root_vertex;
    report["p_root"] = distribution_json(p.plan.p_root);
    report["mean_cost"] = fmt12(stats.mean_cost());
    report["cost_stderr"] = fmt12(stats.cost_stderr());
    report["exact_expected_cost"] = e.expected_cost.str();
    report["violations"] = {{"parity", stats.parity_violations},
                            {"connectivity", stats.connectivity_violations}};
    json edges = json::array();
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
        json entry = edge_json(p.support.graph, eid);
        entry["mean_multiplicity"] = fmt12(stats.edge_mean(eid));
        entry["exact_expectation"] = e.edge_expectation[static_cast<std::size_t>(eid)].str();
        edges.push_back(entry);
    }
    report["edges"] = edges;
    json cuts = json::array();
    for (int i = 0; i < p.hierarchy.size(); ++i) {
        json entry;
        entry["id"] = i;
        entry["members"] = members_json(p.hierarchy.node(i).members);
        entry["exact_distribution"] = distribution_json(p.plan.dist[static_cast<std::size_t>(i)]);
        json freq = json::array();
        for (int s = 0; s < 4; ++s) {
            long count = stats.pattern_counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)][0] +
                         stats.pattern_counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)][1];
            freq.push_back(fmt12(static_cast<double>(count) / static_cast<double>(stats.samples)));
        }
        entry["state_frequency"] = freq;
        cuts.push_back(entry);
    }
    report["cuts"] = cuts;
    emit_report(out_path, report);
    bool clean = stats.parity_violations == 0 && stats.connectivity_violations == 0;
    return clean ? kExitOk : kExitViolation;
}

int cmd_tour(const PipelineArgs& args, std::uint64_t seed, const std::string& out_path) {
    Pipeline p = args.build();
    TourSample tour = sample_tour(p, seed);
    json report = base_report("tour");
    report["seed"] = seed;
    report["cost"] = tour.cost.str();
    report["lp_value"] = lp_value(p.instance).str();
    report["walk"] = tour.walk;
    json mults = json::array();
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid)
        mults.push_back(tour.mult[static_cast<std::size_t>(eid)]);
    report["multiplicities"] = mults;
    emit_report(out_path, report);
    return kExitOk;
}

int cmd_oracle(const PipelineArgs& args, int max_pairs, const std::string& out_path) {
    Pipeline p = args.build();
    OutcomeDistribution oracle = exact_outcome_distribution(p, max_pairs);
    Rational lp = lp_value(p.instance);

    json report = base_report("oracle");
    report["outcomes"] = static_cast<long>(oracle.outcomes.size());
    report["total_probability"] = oracle.total_probability.str();
    report["expected_cost"] = oracle.expected_cost.str();
    report["lp_value"] = lp.str();
    report["four_thirds_lp"] = (Rational(4, 3) * lp).str();
    report["bound_holds"] = oracle.expected_cost <= Rational(4, 3) * lp;
    json edges = json::array();
    for (int eid = 0; eid < p.support.graph.edge_count(); ++eid) {
        json entry = edge_json(p.support.graph, eid);
        entry["expected_multiplicity"] =
            oracle.edge_expectation[static_cast<std::size_t>(eid)].str();
        edges.push_back(entry);
    }
    report["edges"] = edges;
    json cuts = json::array();
    for (int i = 0; i < p.hierarchy.size(); ++i) {
        json entry;
        entry["id"] = i;
        entry["members"] = members_json(p.hierarchy.node(i).members);
        entry["chain_distribution"] = distribution_json(p.plan.dist[static_cast<std::size_t>(i)]);
        json marg = json::array();
        for (int s = 0; s < 4; ++s) {
            const auto& byv = oracle.pattern_marginals[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
            marg.push_back(json::array({byv[0].str(), byv[1].str()}));
        }
        entry["pattern_marginals"] = marg;
        cuts.push_back(entry);
    }
    report["cuts"] = cuts;
    emit_report(out_path, report);
    return kExitOk;
}

int cmd_region(const std::string& check_text, long closure_samples, std::uint64_t seed,
               const std::string& necessity_text, const std::string& out_path) {
    json report = base_report("region");
    if (!check_text.empty()) {
        StateDistribution p = parse_distribution(check_text);
        bool inside = region_contains(p);
        report["distribution"] = distribution_json(p);
        report["in_region"] = inside;
        report["verdict"] = inside ? "in region" : "outside region";
        emit_report(out_path, report);
        return inside ? kExitOk : kExitViolation;
    }
    if (!necessity_text.empty()) {
        StateDistribution p = parse_distribution(necessity_text);
        NecessityCertificate cert = check_necessity(p);
        report["distribution"] = distribution_json(p);
        switch (cert.kind) {
        case NecessityCertificate::Kind::in_region: report["certificate"] = "in_region"; break;
        case NecessityCertificate::Kind::usage_exceeds:
            report["certificate"] = "usage_exceeds";
            break;
        case NecessityCertificate::Kind::two_step_collapse:
            report["certificate"] = "two_step_collapse";
            break;
        case NecessityCertificate::Kind::one_step_collapse:
            report["certificate"] = "one_step_collapse";
            break;
        }
        report["bound"] = cert.bound.str();
        report["detail"] = cert.detail;
        emit_report(out_path, report);
        return kExitOk;
    }
    require(closure_samples > 0, Errc::parse_error,
            "region needs --check, --necessity or --closure-samples");
    // closure property over the polytope vertices plus seeded interior points
    SplitMix64 rng(substream_seed(seed, 0x52));
    long failures = 0;
    long tested = 0;
    auto check_point = [&](const StateDistribution& p) {
        ++tested;
        ChainParams even = select_params(p, 2, true);
        StateDistribution image = even_step(p, even.z, even.w);
        StateDistribution closed = make_distribution(
            rat(1, 2) - p[3] * rat(1, 2), rat(1, 6) + p[3] * rat(1, 2),
            rat(1, 6) + p[3] * rat(1, 2), rat(1, 6) - p[3] * rat(1, 2));
        if (image != closed || !region_contains(image) || !region_contains(swap12(image)))
            ++failures;
        ChainParams odd = select_params(p, 3, false);
        StateDistribution odd_image = odd_step(p, odd.x, odd.y, odd.z, odd.w, 3);
        if (odd_image != make_distribution(rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)) ||
            !region_contains(odd_image) || !region_contains(swap12(odd_image)))
            ++failures;
    };
    for (const auto& vertex : region_vertices()) check_point(vertex);
    for (long i = 0; i < closure_samples; ++i) check_point(random_region_point(rng));
    report["points_tested"] = tested;
    report["failures"] = failures;
    emit_report(out_path, report);
    return failures == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-integral cycle-cut TSP toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
    std::string gen_family = "fig1";
    int gen_k = 0;
    std::uint64_t gen_seed = 1;
    int gen_leaves = 8;
    bool gen_unit = false;
    std::string gen_out;
    gen->add_option("--family", gen_family, "fig1 | random")->required();
    gen->add_option("--k", gen_k, "path length parameter for fig1");
    gen->add_option("--seed", gen_seed, "seed for the random family");
    gen->add_option("--leaves", gen_leaves, "blueprint leaf count for the random family");
    gen->add_flag("--unit-costs", gen_unit, "use unit costs in the random family");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "validate an instance file");
    std::string check_path, check_out;
    check->add_option("file", check_path, "instance JSON file")->required();
    check->add_option("-o,--out", check_out, "report file (default stdout)");

    // hierarchy
    auto* hier = app.add_subcommand("hierarchy", "critical-cut hierarchy and frames");
    std::string hier_path, hier_dot, hier_out;
    int hier_root = -1;
    hier->add_option("file", hier_path, "instance JSON file")->required();
    hier->add_option("--root", hier_root, "root vertex");
    hier->add_option("--dot", hier_dot, "write Graphviz hierarchy here");
    hier->add_option("-o,--out", hier_out, "report file (default stdout)");

    // expect
    auto* expect = app.add_subcommand("expect", "exact per-edge expectations and cost");
    PipelineArgs expect_args;
    std::string expect_out;
    add_pipeline_options(expect, expect_args);
    expect->add_option("-o,--out", expect_out, "report file (default stdout)");

    // sample
    auto* sample = app.add_subcommand("sample", "Monte Carlo usage statistics");
    PipelineArgs sample_args;
    long sample_n = 0;
    std::uint64_t sample_seed = 0;
    int sample_jobs = 1;
    std::string sample_out;
    add_pipeline_options(sample, sample_args);
    sample->add_option("-n,--samples", sample_n, "number of samples")->required();
    sample->add_option("--seed", sample_seed, "seed")->required();
    sample->add_option("--jobs", sample_jobs, "worker threads");
    sample->add_option("-o,--out", sample_out, "report file (default stdout)");

    // tour
    auto* tour = app.add_subcommand("tour", "sample one Eulerian tour");
    PipelineArgs tour_args;
    std::uint64_t tour_seed = 0;
    std::string tour_out;
    add_pipeline_options(tour, tour_args);
    tour->add_option("--seed", tour_seed, "seed")->required();
    tour->add_option("-o,--out", tour_out, "report file (default stdout)");

    // region
    auto* region = app.add_subcommand("region", "feasible-region analysis");
    std::string region_check, region_necessity, region_out;
    long region_closure = 0;
    std::uint64_t region_seed = 1;
    region->add_option("--check", region_check, "membership test for 'p1,p2,p3,p4'");
    region->add_option("--closure-samples", region_closure, "verify closure on M seeded points");
    region->add_option("--seed", region_seed, "seed for --closure-samples");
    region->add_option("--necessity", region_necessity, "infeasibility certificate for a point");
    region->add_option("-o,--out", region_out, "report file (default stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exhaustive outcome distribution");
    PipelineArgs oracle_args;
    int oracle_max_pairs = 12;
    std::string oracle_out;
    add_pipeline_options(oracle, oracle_args);
    oracle->add_option("--max-pairs", oracle_max_pairs, "branching cap (connecting pairs)");
    oracle->add_option("-o,--out", oracle_out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
        if (*gen) return cmd_gen(gen_family, gen_k, gen_seed, gen_leaves, gen_unit, gen_out);
        if (*check) return cmd_check(check_path, check_out);
        if (*hier) return cmd_hierarchy(hier_path, hier_root, hier_dot, hier_out);
        if (*expect) return cmd_expect(expect_args, expect_out);
        if (*sample) return cmd_sample(sample_args, sample_n, sample_seed, sample_jobs, sample_out);
        if (*tour) return cmd_tour(tour_args, tour_seed, tour_out);
        if (*region)
            return cmd_region(region_check, region_closure, region_seed, region_necessity,
                              region_out);
        if (*oracle) return cmd_oracle(oracle_args, oracle_max_pairs, oracle_out);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        switch (err.code()) {
        case Errc::degree_cut_present:
        case Errc::region_violation: return kExitViolation;
        default: return kExitUsage;
        }
    } catch (const std::exception& err) {
        std::cerr << err.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
