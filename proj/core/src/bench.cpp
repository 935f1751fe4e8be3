#include "kerncert/bench.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <cmath>
#include <set>

#include <json.hpp>

#include "kerncert/dimacs.hpp"
#include "kerncert/graph_oracles.hpp"

namespace kerncert {

using nlohmann::ordered_json;

std::string bench_record_json(const BenchRecord& r, bool include_wall) {
    ordered_json j;
    j["instance"] = r.instance;
    j["formula_clauses"] = r.formula_clauses;
    j["formula_vars"] = r.formula_vars;
    j["C"] = r.chain_C;
    j["R"] = r.branch_R;
    ordered_json fs = ordered_json::array();
    for (auto& [label, n] : r.fragment_sizes) fs.push_back({{"label", label}, {"steps", n}});
    j["fragment_sizes"] = fs;
    j["kernel_sizes"] = r.kernel_sizes;
    j["total_steps"] = r.total_steps;
    j["total_lines"] = r.total_lines;
    j["ext_vars"] = r.ext_vars;
    j["bound_predicted"] = (double)r.bound_predicted;
    j["bound_saturated"] = r.bound_saturated;
    j["verdict"] = r.verdict;
    if (include_wall) j["wall_ms"] = r.wall_ms;
    return j.dump();
}

std::string count_comparison_json(const CountComparison& c) {
    ordered_json j;
    j["lemma"] = c.lemma;
    ordered_json p;
    for (auto& [k, v] : c.params) p[k] = v;
    j["params"] = p;
    j["formula_value"] = c.formula_value;
    j["enumeration_value"] = c.enumeration_value;
    j["agree"] = c.agree;
    return j.dump();
}

BenchRecord record_of_certify(const std::string& label, const Formula& root,
                              const CertifyResult& res) {
    BenchRecord r;
    r.instance = label;
    r.formula_clauses = root.num_clauses();
    r.formula_vars = root.num_vars();
    r.chain_C = res.report.chain_length_C;
    r.branch_R = res.report.branching_factor_R;
    r.total_steps = res.report.step_clauses;
    r.total_lines = res.report.step_lines;
    r.ext_vars = res.report.extension_vars;
    uint64_t max_fragment = 0, max_kernel = 0;
    for (auto& [lab, n] : res.report.fragment_subtotals) {
        if (lab.rfind("kernel:", 0) == 0 || lab.rfind("solved-unsat:", 0) == 0 ||
            lab.rfind("direct:", 0) == 0) {
            r.kernel_sizes.push_back(n);
            max_kernel = std::max(max_kernel, n);
        } else {
            r.fragment_sizes.push_back({lab, n});
            max_fragment = std::max(max_fragment, n);
        }
    }
    BoundEstimate be = bound_evaluate((long double)max_fragment, (long double)max_kernel,
                                      r.branch_R, r.chain_C);
    r.bound_predicted = be.value;
    r.bound_saturated = be.saturated;
    switch (res.status) {
        case CertifyResult::Status::Accepted: r.verdict = "accept"; break;
        case CertifyResult::Status::SatInstance: r.verdict = "sat"; break;
        case CertifyResult::Status::Partial: r.verdict = "partial"; break;
    }
    return r;
}

Graph random_graph(SplitMix64& rng, int n, double edge_prob) {
    Graph g(n);
    for (int u = 1; u <= n; u++)
        for (int v = u + 1; v <= n; v++)
            if (rng.uniform() < edge_prob) g.add_edge(u, v);
    return g;
}

Instance random_unsat_vc(SplitMix64& rng, int max_n, int max_k) {
    for (;;) {
        int n = rng.range(8, max_n);
        int k = rng.range(1, max_k);
        double p = 0.15 + 0.25 * rng.uniform();
        Graph g = random_graph(rng, n, p);
        if (g.num_edges() == 0) continue;
        if (vc_at_most(g, k)) continue;
        return GraphInstance{ProblemKind::VertexCover, g, k};
    }
}

Instance random_unsat_hitting(SplitMix64& rng, int max_universe, int k, int d) {
    for (;;) {
        int m = rng.range(5, max_universe);
        int sets = rng.range(k + 2, 3 * m);
        std::set<std::vector<int>> fam;
        for (int s = 0; s < sets; s++) {
            int a = rng.range(1, m), b = rng.range(1, m);
            if (a == b) continue;
            fam.insert({std::min(a, b), std::max(a, b)});
        }
        std::vector<std::vector<int>> family(fam.begin(), fam.end());
        if (family.size() < (size_t)k + 2) continue;
        try {
            if (hitting_min(family) <= k) continue;
        } catch (const std::exception&) {
            continue;
        }
        std::set<int> uni;
        for (auto& s : family) uni.insert(s.begin(), s.end());
        return HittingInstance{{uni.begin(), uni.end()}, family, k, d};
    }
}

Instance random_unsat_ecc(SplitMix64& rng, int max_n, int max_k) {
    for (;;) {
        int base = rng.range(4, std::min(6, max_n));
        Graph g0 = random_graph(rng, base, 0.5);
        // plant twins and isolated vertices so both rules stay exercised
        int clones = rng.range(1, 3), iso = rng.range(1, 4);
        int n = base + clones + iso;
        if (n > max_n) continue;
        Graph g(n);
        for (auto [u, v] : g0.edges()) g.add_edge(u, v);
        for (int c = 0; c < clones; c++) {
            int v = base + 1 + c;
            int orig = rng.range(1, base);
            for (int u = 1; u <= base + c; u++)
                if (u != v && (g.has_edge(orig, u) || u == orig)) g.add_edge(v, u);
        }
        int k = rng.range(1, max_k);
        if (g.num_edges() == 0) continue;
        try {
            if (ecc_min(g) <= k) continue;
        } catch (const std::exception&) {
            continue;
        }
        return GraphInstance{ProblemKind::EdgeCliqueCover, g, k};
    }
}

Instance dualcol_crown_fixture(int k, int clique_size, int apexes) {
    int t = k - 1;
    if (t < 1 || clique_size < 2) throw std::runtime_error("fixture needs k >= 2, clique >= 2");
    int n = apexes + 2 * t + clique_size;
    Graph g(n);
    int apex0 = 1, c0 = apexes + 1, h0 = apexes + t + 1, r0 = apexes + 2 * t + 1;
    for (int x = 0; x < apexes; x++)
        for (int u = 1; u <= n; u++)
            if (u != apex0 + x && !g.has_edge(apex0 + x, u)) g.add_edge(apex0 + x, u);
    for (int i = 0; i < t; i++)
        for (int j = i + 1; j < t; j++) g.add_edge(c0 + i, c0 + j);
    for (int i = 0; i < t; i++)
        for (int j = 0; j < clique_size; j++) g.add_edge(c0 + i, r0 + j);
    for (int i = 0; i < t; i++)
        for (int j = 0; j < t; j++)
            if (i != j) g.add_edge(c0 + i, h0 + j); // the matching pairs stay off
    for (int i = 0; i < clique_size; i++)
        for (int j = i + 1; j < clique_size; j++) g.add_edge(r0 + i, r0 + j);
    return GraphInstance{ProblemKind::DualColoring, g, k};
}

std::vector<Instance> dualcol_fixture_suite() {
    std::vector<Instance> out;
    for (auto [k, r, a] :
         std::vector<std::tuple<int, int, int>>{{2, 3, 0},
                                                {2, 4, 0},
                                                {2, 3, 1},
                                                {2, 4, 1},
                                                {2, 5, 0},
                                                {3, 4, 0},
                                                {3, 5, 0},
                                                {3, 4, 1},
                                                {3, 5, 1},
                                                {3, 6, 0}})
        out.push_back(dualcol_crown_fixture(k, r, a));
    return out;
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
    std::vector<BenchRecord> out;
    SplitMix64 rng(cfg.seed);
    std::vector<std::pair<std::string, Instance>> tasks;
    auto push = [&](const Instance& inst) { tasks.push_back({instance_label(inst), inst}); };

    if (cfg.problem == "vc") {
        for (int i = 0; i < cfg.count; i++) push(random_unsat_vc(rng, 30, 3));
    } else if (cfg.problem == "hitting") {
        for (int i = 0; i < cfg.count; i++)
            push(random_unsat_hitting(rng, 9, rng.range(1, 2), 2));
    } else if (cfg.problem == "ecc") {
        for (int i = 0; i < cfg.count; i++) push(random_unsat_ecc(rng, 12, 2));
    } else if (cfg.problem == "dualcol") {
        for (const Instance& inst : dualcol_fixture_suite()) push(inst);
    } else if (cfg.problem == "arrow") {
        push(ArrowInstance{3, 3});
    } else if (cfg.problem == "gs") {
        push(GSInstance{3, 3});
    } else if (cfg.problem == "kneser" || cfg.problem == "schrijver") {
        // direct refutations, no kernelization
        std::vector<int> ns = cfg.problem == "kneser" ? std::vector<int>{5, 6, 7}
                                                      : std::vector<int>{5, 6, 7, 8, 9};
        for (int n : ns) {
            BenchRecord r;
            Formula f = cfg.problem == "kneser" ? encode_kneser(n, 2) : encode_schrijver(n, 2);
            r.instance = cfg.problem + "(n=" + std::to_string(n) + ",k=2)";
            r.formula_clauses = f.num_clauses();
            r.formula_vars = f.num_vars();
            auto t0 = std::chrono::steady_clock::now();
            try {
                RefuteCheckResult rc = refute_and_check(f, cfg.limits);
                r.total_steps = count_step_clauses(rc.certificate);
                r.total_lines = count_step_lines(rc.certificate);
                r.kernel_sizes.push_back(r.total_steps);
                r.verdict = rc.unsat ? "accept" : "sat";
                if (!cfg.cert_dir.empty() && rc.unsat) {
                    std::filesystem::create_directories(cfg.cert_dir);
                    std::ofstream cf(std::filesystem::path(cfg.cert_dir) /
                                         (cfg.problem + "_" + std::to_string(n) + ".ecert"),
                                     std::ios::binary);
                    certificate_write(rc.certificate, cf);
                }
            } catch (const std::exception& e) {
                r.verdict = std::string("error:") + e.what();
            }
            r.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            out.push_back(std::move(r));
        }
        return out;
    } else {
        throw std::runtime_error("unknown bench problem '" + cfg.problem + "'");
    }

    auto run_task = [&cfg](const std::string& label, const Instance& inst,
                           int task_index) -> BenchRecord {
        auto t0 = std::chrono::steady_clock::now();
        BenchRecord r;
        try {
            Formula root = encode_instance(inst);
            CertifyResult res = certify(inst, cfg.limits);
            r = record_of_certify(label, root, res);
            if (!cfg.cert_dir.empty() && res.accepted()) {
                std::filesystem::create_directories(cfg.cert_dir);
                std::ofstream cf(std::filesystem::path(cfg.cert_dir) /
                                     (cfg.problem + "_" + std::to_string(task_index) + ".ecert"),
                                 std::ios::binary);
                certificate_write(res.certificate, cf);
            }
        } catch (const std::exception& e) {
            r.instance = label;
            r.verdict = std::string("error:") + e.what();
        }
        r.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return r;
    };

    if (cfg.jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); i++)
            out.push_back(run_task(tasks[i].first, tasks[i].second, (int)i));
        return out;
    }
    // bounded pool; results collected in submission order
    std::vector<std::future<BenchRecord>> pending;
    size_t next = 0, drained = 0;
    while (drained < tasks.size()) {
        while (next < tasks.size() && next - drained < (size_t)cfg.jobs) {
            pending.push_back(std::async(std::launch::async, run_task, tasks[next].first,
                                         tasks[next].second, (int)next));
            next++;
        }
        out.push_back(pending[drained].get());
        drained++;
    }
    return out;
}

GrowthFit fit_growth(const std::vector<BenchRecord>& records) {
    std::vector<std::pair<double, double>> pts;
    for (const BenchRecord& r : records)
        if (r.verdict == "accept" && r.formula_clauses > 0 && r.total_steps > 0)
            pts.push_back({std::log((double)r.formula_clauses), std::log((double)r.total_steps)});
    if (pts.size() < 4) throw std::runtime_error("growth fit needs at least 4 accepted records");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double nn = (double)pts.size();
    double varx = sxx - sx * sx / nn;
    if (varx < 1e-12) throw std::runtime_error("growth fit: degenerate variance");
    GrowthFit fit;
    fit.points = (int)pts.size();
    fit.slope = (sxy - sx * sy / nn) / varx;
    fit.intercept = (sy - fit.slope * sx) / nn;
    double ssr = 0, sst = 0, ybar = sy / nn;
    for (auto [x, y] : pts) {
        double pred = fit.intercept + fit.slope * x;
        ssr += (y - pred) * (y - pred);
        sst += (y - ybar) * (y - ybar);
    }
    fit.r2 = sst < 1e-12 ? 1.0 : 1.0 - ssr / sst;
    return fit;
}

} // namespace kerncert
