#include "kerncert/cdcl.hpp"

#include <algorithm>

#include "kerncert/dimacs.hpp"

namespace kerncert {

namespace {

// Literal encoding: var v -> 2v (positive), 2v+1 (negative).
inline int enc(Lit l) { return l > 0 ? 2 * l : -2 * l + 1; }
inline int neg(int e) { return e ^ 1; }

constexpr uint32_t NO_REASON = 0xffffffffu;

struct DbClause {
    std::vector<int> lits; // encoded
    double activity = 0;
    bool learned = false;
    bool removed = false;
};

struct Solver {
    int nvars;
    std::vector<DbClause> db; // index = clause id - 1; axioms first
    int num_axioms;

    std::vector<std::vector<uint32_t>> watches;
    std::vector<char> assign; // 0 unset, 1 true, 2 false
    std::vector<int> level;
    std::vector<uint32_t> reason;
    std::vector<int> trail;
    std::vector<size_t> trail_lim;
    size_t qhead = 0;

    std::vector<double> activity;
    double var_inc = 1.0;
    double cla_inc = 1.0;
    std::vector<char> phase;
    std::vector<int> heap;
    std::vector<int> heap_pos;

    // proof log: flattened resolution chains; pivot 0 marks a chain head
    std::vector<uint32_t> chain_ids;
    std::vector<int> chain_pivots;
    std::vector<std::pair<size_t, size_t>> learned_chains; // (offset, count)
    std::vector<uint32_t> learned_of_chain;                // clause id, 0 = empty clause

    RefuterStats stats;
    std::vector<char> seen;
    std::vector<char> mark; // scratch for empty-clause derivation

    explicit Solver(const Formula& f) {
        nvars = f.num_vars();
        num_axioms = f.num_clauses();
        watches.assign(2 * nvars + 2, {});
        assign.assign(nvars + 1, 0);
        level.assign(nvars + 1, 0);
        reason.assign(nvars + 1, NO_REASON);
        activity.assign(nvars + 1, 0.0);
        phase.assign(nvars + 1, 0);
        heap_pos.assign(nvars + 1, -1);
        seen.assign(nvars + 1, 0);
        mark.assign(nvars + 1, 0);
        db.reserve(num_axioms * 2);
        for (const Clause& c : f.clauses()) {
            DbClause dc;
            for (Lit l : c.lits()) dc.lits.push_back(enc(l));
            db.push_back(std::move(dc));
        }
        for (int v = nvars; v >= 1; v--) heap_insert(v);
    }

    bool heap_less(int a, int b) const {
        return activity[a] != activity[b] ? activity[a] < activity[b] : a > b;
    }
    void heap_up(size_t i) {
        int v = heap[i];
        while (i > 0) {
            size_t p = (i - 1) / 2;
            if (!heap_less(heap[p], v)) break;
            heap[i] = heap[p];
            heap_pos[heap[i]] = (int)i;
            i = p;
        }
        heap[i] = v;
        heap_pos[v] = (int)i;
    }
    void heap_down(size_t i) {
        int v = heap[i];
        size_t n = heap.size();
        for (;;) {
            size_t c = 2 * i + 1;
            if (c >= n) break;
            if (c + 1 < n && heap_less(heap[c], heap[c + 1])) c++;
            if (!heap_less(v, heap[c])) break;
            heap[i] = heap[c];
            heap_pos[heap[i]] = (int)i;
            i = c;
        }
        heap[i] = v;
        heap_pos[v] = (int)i;
    }
    void heap_insert(int v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_up(heap.size() - 1);
    }
    int heap_pop() {
        int v = heap[0];
        heap_pos[v] = -1;
        heap[0] = heap.back();
        heap.pop_back();
        if (!heap.empty()) {
            heap_pos[heap[0]] = 0;
            heap_down(0);
        }
        return v;
    }

    void bump_var(int v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (int u = 1; u <= nvars; u++) activity[u] *= 1e-100;
            var_inc *= 1e-100;
        }
        if (heap_pos[v] >= 0) heap_up(heap_pos[v]);
    }
    void bump_clause(uint32_t id) {
        DbClause& c = db[id - 1];
        if (!c.learned) return;
        c.activity += cla_inc;
        if (c.activity > 1e20) {
            for (DbClause& d : db)
                if (d.learned) d.activity *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    int decision_level() const { return (int)trail_lim.size(); }
    bool lit_true(int e) const { return assign[e >> 1] == ((e & 1) ? 2 : 1); }
    bool lit_false(int e) const { return assign[e >> 1] == ((e & 1) ? 1 : 2); }

    void enqueue(int e, uint32_t why) {
        int v = e >> 1;
        assign[v] = (e & 1) ? 2 : 1;
        level[v] = decision_level();
        reason[v] = why;
        trail.push_back(e);
    }

    void attach(uint32_t id) {
        DbClause& c = db[id - 1];
        watches[neg(c.lits[0])].push_back(id);
        watches[neg(c.lits[1])].push_back(id);
    }

    uint32_t propagate() {
        while (qhead < trail.size()) {
            int e = trail[qhead++];
            stats.propagations++;
            std::vector<uint32_t>& wl = watches[e];
            size_t keep = 0;
            for (size_t i = 0; i < wl.size(); i++) {
                uint32_t id = wl[i];
                DbClause& c = db[id - 1];
                if (c.removed) continue;
                int fl = neg(e);
                if (c.lits[0] == fl) std::swap(c.lits[0], c.lits[1]);
                if (lit_true(c.lits[0])) {
                    wl[keep++] = id;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.lits.size(); k++) {
                    if (!lit_false(c.lits[k])) {
                        std::swap(c.lits[1], c.lits[k]);
                        watches[neg(c.lits[1])].push_back(id);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                wl[keep++] = id;
                if (lit_false(c.lits[0])) {
                    for (size_t j = i + 1; j < wl.size(); j++) wl[keep++] = wl[j];
                    wl.resize(keep);
                    return id;
                }
                enqueue(c.lits[0], id);
            }
            wl.resize(keep);
        }
        return 0;
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        size_t bound = trail_lim[lvl];
        for (size_t i = trail.size(); i-- > bound;) {
            int v = trail[i] >> 1;
            phase[v] = assign[v] == 1;
            assign[v] = 0;
            reason[v] = NO_REASON;
            heap_insert(v);
        }
        trail.resize(bound);
        trail_lim.resize(lvl);
        qhead = trail.size();
    }

    // 1UIP analysis. Level-0 literals stay in the learned clause so the
    // logged chain reproduces it exactly. Requires decision_level() > 0.
    void analyze(uint32_t confl, std::vector<int>& out_learnt, int& out_btlevel,
                 size_t& chain_begin) {
        out_learnt.assign(1, 0); // slot for the asserting literal
        chain_begin = chain_ids.size();
        chain_ids.push_back(confl);
        chain_pivots.push_back(0);
        bump_clause(confl);

        int counter = 0;
        int p = -1;
        size_t index = trail.size();
        uint32_t cl = confl;
        for (;;) {
            const DbClause& c = db[cl - 1];
            for (int q : c.lits) {
                if (q == p) continue;
                int v = q >> 1;
                if (seen[v]) continue;
                seen[v] = 1;
                bump_var(v);
                if (level[v] == decision_level()) counter++;
                else out_learnt.push_back(q);
            }
            while (!seen[trail[index - 1] >> 1]) index--;
            p = trail[index - 1];
            index--;
            seen[p >> 1] = 0;
            counter--;
            if (counter == 0) break;
            cl = reason[p >> 1];
            chain_ids.push_back(cl);
            chain_pivots.push_back(p >> 1);
            bump_clause(cl);
        }
        out_learnt[0] = neg(p);
        for (size_t i = 1; i < out_learnt.size(); i++) seen[out_learnt[i] >> 1] = 0;

        out_btlevel = 0;
        size_t max_i = 1;
        for (size_t i = 1; i < out_learnt.size(); i++) {
            int lv = level[out_learnt[i] >> 1];
            if (lv > out_btlevel) {
                out_btlevel = lv;
                max_i = i;
            }
        }
        if (out_learnt.size() > 1) std::swap(out_learnt[1], out_learnt[max_i]);
    }

    // Conflict whose literals are all falsified at level 0: extend the
    // chain until it reaches the empty clause.
    void derive_empty(uint32_t confl, size_t& chain_begin) {
        chain_begin = chain_ids.size();
        chain_ids.push_back(confl);
        chain_pivots.push_back(0);
        for (int q : db[confl - 1].lits) mark[q >> 1] = 1;
        for (size_t i = trail.size(); i-- > 0;) {
            int v = trail[i] >> 1;
            if (!mark[v]) continue;
            mark[v] = 0;
            uint32_t r = reason[v];
            chain_ids.push_back(r);
            chain_pivots.push_back(v);
            for (int q : db[r - 1].lits)
                if ((q >> 1) != v) mark[q >> 1] = 1;
        }
    }

    uint32_t add_learned(const std::vector<int>& lits, size_t chain_begin) {
        DbClause dc;
        dc.lits = lits;
        dc.learned = true;
        db.push_back(std::move(dc));
        learned_chains.push_back({chain_begin, chain_ids.size() - chain_begin});
        learned_of_chain.push_back((uint32_t)db.size());
        return (uint32_t)db.size();
    }

    // Only safe at decision level 0: removal never disturbs the watch
    // positions of surviving clauses.
    void reduce_db() {
        std::vector<uint32_t> cands;
        for (uint32_t id = (uint32_t)num_axioms + 1; id <= db.size(); id++) {
            DbClause& c = db[id - 1];
            if (c.removed || !c.learned || c.lits.size() <= 2) continue;
            int v0 = c.lits[0] >> 1;
            bool locked = assign[v0] != 0 && reason[v0] == id;
            if (!locked) cands.push_back(id);
        }
        std::sort(cands.begin(), cands.end(), [&](uint32_t a, uint32_t b) {
            return db[a - 1].activity != db[b - 1].activity
                       ? db[a - 1].activity < db[b - 1].activity
                       : a < b;
        });
        for (size_t i = 0; i < cands.size() / 2; i++) db[cands[i] - 1].removed = true;
        for (auto& w : watches) w.clear();
        for (uint32_t id = 1; id <= db.size(); id++) {
            DbClause& c = db[id - 1];
            if (!c.removed && c.lits.size() >= 2) attach(id);
        }
    }

    static uint64_t luby(uint64_t x) {
        uint64_t size = 1, seq = 0;
        while (size < x + 1) {
            seq++;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) >> 1;
            seq--;
            x %= size;
        }
        return 1ull << seq;
    }
};

} // namespace

RefuterResult refute_kernel(const Formula& f, const RefuterLimits& limits) {
    RefuterResult res;
    res.refutation.fingerprint = formula_fingerprint(f);
    res.refutation.root_nvars = f.num_vars();
    res.refutation.root_nclauses = f.num_clauses();

    for (int i = 1; i <= f.num_clauses(); i++) {
        if (f.clause(i).empty()) {
            uint32_t s = res.refutation.add(ProofStep::mk_axiom(i));
            res.refutation.targets.push_back({s, 0});
            res.status = RefuterResult::Status::Unsat;
            return res;
        }
    }

    Solver S(f);

    // level-0 units; a conflicting pair refutes immediately
    for (uint32_t id = 1; id <= (uint32_t)S.num_axioms; id++) {
        DbClause& c = S.db[id - 1];
        if (c.lits.size() != 1) continue;
        int e = c.lits[0];
        if (S.lit_true(e)) continue;
        if (S.lit_false(e)) {
            uint32_t other = S.reason[e >> 1];
            uint32_t a1 = res.refutation.add(ProofStep::mk_axiom((int)other));
            uint32_t a2 = res.refutation.add(ProofStep::mk_axiom((int)id));
            uint32_t r = res.refutation.add(ProofStep::mk_resolve({a1, 0}, {a2, 0}, e >> 1));
            res.refutation.targets.push_back({r, 0});
            res.status = RefuterResult::Status::Unsat;
            return res;
        }
        S.enqueue(e, id);
    }
    for (uint32_t id = 1; id <= (uint32_t)S.num_axioms; id++)
        if (S.db[id - 1].lits.size() >= 2) S.attach(id);

    uint64_t restart_count = 0;
    uint64_t restart_limit = 64 * Solver::luby(restart_count);
    uint64_t conflicts_since_restart = 0;
    uint64_t learned_cap = std::max<uint64_t>(4000, (uint64_t)S.num_axioms / 2);
    bool derived_empty = false;

    std::vector<int> learnt;
    while (!derived_empty) {
        uint32_t confl = S.propagate();
        if (confl != 0) {
            S.stats.conflicts++;
            conflicts_since_restart++;
            if (S.stats.conflicts > limits.max_conflicts ||
                S.chain_ids.size() > limits.max_log_entries) {
                res.status = RefuterResult::Status::Limit;
                res.stats = S.stats;
                return res;
            }
            size_t chain_begin = 0;
            if (S.decision_level() == 0) {
                S.derive_empty(confl, chain_begin);
                S.learned_chains.push_back({chain_begin, S.chain_ids.size() - chain_begin});
                S.learned_of_chain.push_back(0);
                derived_empty = true;
                break;
            }
            int btlevel = 0;
            S.analyze(confl, learnt, btlevel, chain_begin);
            S.cancel_until(btlevel);
            uint32_t id;
            if (S.chain_ids.size() == chain_begin + 1) {
                // no resolutions happened: the "learned" clause is confl itself
                id = S.chain_ids[chain_begin];
                S.chain_ids.resize(chain_begin);
                S.chain_pivots.resize(chain_begin);
            } else {
                id = S.add_learned(learnt, chain_begin);
                if (learnt.size() >= 2) S.attach(id);
            }
            S.enqueue(learnt[0], id);
            S.var_inc /= 0.95;
            S.cla_inc /= 0.999;
        } else {
            if (conflicts_since_restart >= restart_limit) {
                conflicts_since_restart = 0;
                restart_limit = 64 * Solver::luby(++restart_count);
                S.cancel_until(0);
                uint64_t learned_now = S.db.size() - S.num_axioms;
                if (learned_now > learned_cap) {
                    S.reduce_db();
                    learned_cap += learned_cap / 2;
                }
                continue;
            }
            int v = 0;
            while (!S.heap.empty()) {
                int u = S.heap_pop();
                if (S.assign[u] == 0) {
                    v = u;
                    break;
                }
            }
            if (v == 0) {
                res.status = RefuterResult::Status::Sat;
                res.model.assign(S.nvars + 1, 0);
                for (int u = 1; u <= S.nvars; u++) res.model[u] = S.assign[u] == 1;
                res.stats = S.stats;
                return res;
            }
            S.stats.decisions++;
            S.trail_lim.push_back(S.trail.size());
            S.enqueue(S.phase[v] ? 2 * v : 2 * v + 1, NO_REASON);
        }
    }

    // Trim: keep only chains the empty clause depends on, then emit folds.
    size_t nchains = S.learned_chains.size();
    std::vector<char> needed(S.db.size() + 1, 0);
    std::vector<char> chain_needed(nchains, 0);
    chain_needed[nchains - 1] = 1;

    std::vector<size_t> chain_of_clause(S.db.size() + 1, SIZE_MAX);
    for (size_t ci = 0; ci < nchains; ci++)
        if (S.learned_of_chain[ci] != 0) chain_of_clause[S.learned_of_chain[ci]] = ci;
    for (size_t ci = nchains; ci-- > 0;) {
        if (!chain_needed[ci]) continue;
        auto [off, cnt] = S.learned_chains[ci];
        for (size_t k = 0; k < cnt; k++) {
            uint32_t id = S.chain_ids[off + k];
            if (!needed[id]) {
                needed[id] = 1;
                if (chain_of_clause[id] != SIZE_MAX) chain_needed[chain_of_clause[id]] = 1;
            }
        }
    }

    Certificate& cert = res.refutation;
    std::vector<uint32_t> step_of_clause(S.db.size() + 1, 0);
    auto ref_of = [&](uint32_t id) -> StepRef {
        if (step_of_clause[id] == 0) {
            if (id > (uint32_t)S.num_axioms)
                throw std::runtime_error("internal: learned clause used before its chain");
            step_of_clause[id] = cert.add(ProofStep::mk_axiom((int)id));
        }
        return {step_of_clause[id], 0};
    };
    for (size_t ci = 0; ci < nchains; ci++) {
        if (!chain_needed[ci]) continue;
        auto [off, cnt] = S.learned_chains[ci];
        StepRef cur = ref_of(S.chain_ids[off]);
        for (size_t k = 1; k < cnt; k++) {
            StepRef rhs = ref_of(S.chain_ids[off + k]);
            cur = {cert.add(ProofStep::mk_resolve(cur, rhs, S.chain_pivots[off + k])), 0};
        }
        if (S.learned_of_chain[ci] != 0)
            step_of_clause[S.learned_of_chain[ci]] = cur.id;
        else
            cert.targets.push_back(cur);
    }

    res.status = RefuterResult::Status::Unsat;
    res.stats = S.stats;
    return res;
}

} // namespace kerncert
