#include <doctest.h>

#include <sstream>

#include "kerncert/builder.hpp"
#include "kerncert/cdcl.hpp"
#include "kerncert/checker.hpp"
#include "kerncert/dimacs.hpp"

using namespace kerncert;

namespace {

Formula contradiction_pair() {
    Formula f;
    f.add_clause(Clause{1});
    f.add_clause(Clause{-1});
    return f;
}

} // namespace

TEST_CASE("resolution computes the union minus the pivot pair") {
    CHECK(resolve_clauses(Clause{1, 2}, Clause{-1, 3}, 1) == Clause{2, 3});
    CHECK(resolve_clauses(Clause{1}, Clause{-1}, 1).empty());
    CHECK_THROWS(resolve_clauses(Clause{1, 2}, Clause{-1, -2}, 1)); // tautology
    CHECK_THROWS(resolve_clauses(Clause{1, 2}, Clause{1, 3}, 1));   // same sign
    CHECK_THROWS(resolve_clauses(Clause{2}, Clause{-3}, 1));        // absent
}

TEST_CASE("checker accepts the unit contradiction and rejects bad pivots") {
    Formula f = contradiction_pair();
    Certificate c;
    c.fingerprint = formula_fingerprint(f);
    c.root_nvars = f.num_vars();
    c.root_nclauses = f.num_clauses();
    uint32_t a1 = c.add(ProofStep::mk_axiom(1));
    uint32_t a2 = c.add(ProofStep::mk_axiom(2));
    uint32_t r = c.add(ProofStep::mk_resolve({a1, 0}, {a2, 0}, 1));
    c.targets.push_back({r, 0});
    CHECK(check_certificate(f, c).accepted);
    CHECK(is_accepted_refutation(f, c));

    Certificate bad = c;
    bad.steps[2].pivot = 2;
    Verdict v = check_certificate(f, bad);
    CHECK_FALSE(v.accepted);
    CHECK(v.failed_step == 3);
    CHECK(v.reason.find("pivot") != std::string::npos);

    Certificate oob = c;
    oob.steps[0].axiom_index = 9;
    v = check_certificate(f, oob);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason.find("range") != std::string::npos);
}

TEST_CASE("gate steps expose three defining clauses and demand freshness") {
    Formula f;
    f.add_clause(Clause{1, 2});
    f.set_num_vars(2);
    CertBuilder b(f);
    StepRef g = b.gate_and(3, 1, 2);
    CHECK(b.clause_of({g.id, 1}) == Clause{-3, 1});
    CHECK(b.clause_of({g.id, 2}) == Clause{-3, 2});
    CHECK(b.clause_of({g.id, 3}) == Clause{3, -1, -2});
    StepRef o = b.gate_or(4, -1, 2);
    CHECK(b.clause_of({o.id, 1}) == Clause{4, 1});
    CHECK(b.clause_of({o.id, 3}) == Clause{-4, -1, 2});
    Certificate c = b.take();
    CHECK(check_certificate(f, c).accepted);

    Certificate stale = c;
    stale.steps.push_back(ProofStep::mk_gate_and(3, 1, 2)); // reuse
    Verdict v = check_certificate(f, stale);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason.find("fresh") != std::string::npos);
}

TEST_CASE("certificate text round trips") {
    Formula f;
    f.add_clause(Clause{1, 2});
    f.add_clause(Clause{-1, 2});
    f.set_num_vars(2);
    CertBuilder b(f);
    StepRef a1 = b.axiom(1), a2 = b.axiom(2);
    StepRef r = b.resolve(a1, a2, 1);
    StepRef g = b.gate_and(3, 1, -2);
    StepRef w = b.weaken(r, {-3});
    StepRef r2 = b.resolve(w, {g.id, 3}, 3);
    b.mark_target(r2);
    Certificate c = b.take();
    REQUIRE(check_certificate(f, c).accepted);
    std::string text = certificate_string(c);
    Certificate d = certificate_read_string(text);
    CHECK(certificate_string(d) == text);
    CHECK(d.fingerprint == c.fingerprint);
    CHECK(d.steps.size() == c.steps.size());
    CHECK(check_certificate(f, d).accepted);
}

TEST_CASE("size accounting counts gates both ways and bounds evaluate") {
    Formula f;
    f.add_clause(Clause{1, 2});
    f.set_num_vars(2);
    CertBuilder b(f);
    b.axiom(1);
    b.gate_and(3, 1, 2);
    Certificate c = b.take();
    CHECK(count_step_lines(c) == 2);
    CHECK(count_step_clauses(c) == 4);
    CHECK(count_extension_vars(c) == 1);

    CHECK(bound_evaluate(10, 4, 1, 0).value == doctest::Approx(14));
    CHECK(bound_evaluate(10, 4, 1, 2).value == doctest::Approx(3 * 14));
    CHECK(bound_evaluate(10, 4, 2, 2).value == doctest::Approx(7 * 14));
    CHECK(bound_evaluate(1, 1, 10, 1000).saturated);
}

TEST_CASE("refuter handles the trivial contradiction") {
    RefuterResult r = refute_kernel(contradiction_pair());
    REQUIRE(r.unsat());
    CHECK(is_accepted_refutation(contradiction_pair(), r.refutation));
}

TEST_CASE("refuter agrees with brute force on random small formulas") {
    uint64_t s = 7;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    int unsat_seen = 0;
    for (int t = 0; t < 300; t++) {
        int nv = 3 + (int)(rnd() % 6);
        int nc = 3 * nv + (int)(rnd() % (4 * nv));
        Formula f;
        for (int c = 0; c < nc; c++) {
            std::vector<Lit> lits;
            while (lits.size() < 3) {
                int v = 1 + (int)(rnd() % nv);
                Lit l = (rnd() % 2) ? v : -v;
                bool dup = false;
                for (Lit e : lits)
                    if (var_of(e) == v) dup = true;
                if (!dup) lits.push_back(l);
            }
            f.add_clause(Clause(lits));
        }
        f.set_num_vars(nv);
        bool brute_sat = false;
        for (int mask = 0; mask < (1 << nv) && !brute_sat; mask++) {
            Assignment a(nv + 1, 0);
            for (int v = 0; v < nv; v++) a[v + 1] = (mask >> v) & 1;
            brute_sat = eval_formula(f, a);
        }
        RefuterResult r = refute_kernel(f);
        REQUIRE(r.status != RefuterResult::Status::Limit);
        CHECK(r.sat() == brute_sat);
        if (r.sat()) {
            CHECK(eval_formula(f, r.model));
        } else {
            unsat_seen++;
            CHECK(is_accepted_refutation(f, r.refutation));
        }
    }
    CHECK(unsat_seen > 20);
}

TEST_CASE("deduction transform turns refutations into negation clauses") {
    // single assumed literal over a unit formula
    Formula f;
    f.add_clause(Clause{-5});
    f.set_num_vars(5);
    Formula fx = with_assumption_units(f, {5});
    CertBuilder b(fx);
    StepRef r = b.resolve(b.axiom(1), b.axiom(2), 5);
    b.mark_target(r);
    Certificate refutation = b.take();
    Certificate out = deduction_transform(f, {5}, refutation);
    CHECK(out.steps.size() <= refutation.steps.size());
    CHECK(check_certificate(f, out).accepted);
    auto clauses = replay_step_clauses(f, out);
    CHECK(clause_of_ref(f, out, clauses, out.targets.front()) == Clause{-5});

    // target already an axiom of the formula
    Formula g;
    g.add_clause(Clause{-1, -2});
    g.set_num_vars(2);
    Formula gx = with_assumption_units(g, {1, 2});
    CertBuilder bg(gx);
    StepRef s1 = bg.resolve(bg.axiom(1), bg.axiom(2), 1);
    StepRef s2 = bg.resolve(s1, bg.axiom(3), 2);
    bg.mark_target(s2);
    Certificate refg = bg.take();
    Certificate outg = deduction_transform(g, {1, 2}, refg);
    CHECK(outg.steps.size() <= refg.steps.size());
    auto cg = replay_step_clauses(g, outg);
    CHECK(clause_of_ref(g, outg, cg, outg.targets.front()) == Clause({-1, -2}));
}

TEST_CASE("deduction transform over refuter output on forced random formulas") {
    uint64_t s = 11;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    int done = 0;
    while (done < 100) {
        int nv = 4 + (int)(rnd() % 5);
        int nc = 6 + (int)(rnd() % (3 * nv));
        Formula f;
        for (int c = 0; c < nc; c++) {
            std::vector<Lit> lits;
            while (lits.size() < 3) {
                int v = 1 + (int)(rnd() % nv);
                Lit l = (rnd() % 2) ? v : -v;
                bool dup = false;
                for (Lit e : lits)
                    if (var_of(e) == v) dup = true;
                if (!dup) lits.push_back(l);
            }
            f.add_clause(Clause(lits));
        }
        f.set_num_vars(nv);
        if (!refute_kernel(f).sat()) continue; // want satisfiable bases
        int m = 1 + (int)(rnd() % 3);
        std::vector<Lit> forced;
        for (int v = 1; v <= m; v++) forced.push_back((rnd() % 2) ? v : -v);
        Formula fx = with_assumption_units(f, forced);
        RefuterResult r = refute_kernel(fx);
        if (!r.unsat()) continue;
        Certificate out = deduction_transform(f, forced, r.refutation);
        CHECK(out.steps.size() <= r.refutation.steps.size());
        REQUIRE(check_certificate(f, out).accepted);
        std::vector<Lit> neg;
        for (Lit z : forced) neg.push_back(-z);
        auto clauses = replay_step_clauses(f, out);
        CHECK(clause_of_ref(f, out, clauses, out.targets.front()) == Clause(neg));
        done++;
    }
}

TEST_CASE("replay maps certificates through injective renamings") {
    Formula small;
    small.add_clause(Clause{1});
    small.add_clause(Clause{-1, 2});
    small.add_clause(Clause{-2});
    small.set_num_vars(2);
    RefuterResult r = refute_kernel(small);
    REQUIRE(r.unsat());

    Formula host;
    host.add_clause(Clause{7});
    host.add_clause(Clause{-7, -9});
    host.add_clause(Clause{9});
    host.set_num_vars(9);
    CertBuilder b(host);
    std::vector<Lit> vmap{0, 7, -9}; // var 2 maps to a negative literal
    auto ax = [&](int i) { return b.axiom(i); };
    ReplayResult rep = replay_certificate(b, small, r.refutation, ax, vmap);
    REQUIRE(!rep.target_refs.empty());
    CHECK(b.clause_of(rep.target_refs.front()).empty());
    b.mark_target(rep.target_refs.front());
    Certificate cert = b.take();
    CHECK(is_accepted_refutation(host, cert));
}

TEST_CASE("checker rejects corrupted certificates without crashing") {
    // a certificate with every step kind in play
    Formula f;
    f.add_clause(Clause{1, 2});
    f.add_clause(Clause{-1, 2});
    f.add_clause(Clause{-2, 3});
    f.add_clause(Clause{-3});
    f.set_num_vars(3);
    CertBuilder b(f);
    StepRef r1 = b.resolve(b.axiom(1), b.axiom(2), 1);      // (2)
    StepRef r2 = b.resolve(r1, b.axiom(3), 2);              // (3)
    StepRef g = b.gate_and(4, 2, 3);
    StepRef w = b.weaken(r2, {4});                          // (3 | 4)
    StepRef r3 = b.resolve(w, {g.id, 1}, 4);                // (2 | 3)
    StepRef r4 = b.resolve(r3, b.axiom(3), 2);              // (3)
    StepRef r5 = b.resolve(r4, b.axiom(4), 3);              // empty
    b.mark_target(r5);
    Certificate good = b.take();
    REQUIRE(is_accepted_refutation(f, good));

    // targeted corruptions must all be rejected
    auto expect_reject = [&](Certificate c) {
        Verdict v = check_certificate(f, c);
        CHECK_FALSE(v.accepted);
    };
    {
        Certificate c = good;
        c.steps[0].axiom_index = 99;
        expect_reject(c);
    }
    {
        Certificate c = good;
        for (ProofStep& s : c.steps)
            if (s.kind == StepKind::Resolve) {
                s.pivot = 3 - s.pivot + (s.pivot == 3 ? 3 : 0);
                break;
            }
        expect_reject(c);
    }
    {
        Certificate c = good;
        for (ProofStep& s : c.steps)
            if (s.kind == StepKind::GateAnd) s.gate_var = 1; // not fresh
        expect_reject(c);
    }
    {
        Certificate c = good;
        c.fingerprint ^= 1;
        expect_reject(c);
    }

    // random literal and reference flips: never accepted as refutations of
    // a satisfiable formula, never a crash
    Formula sat;
    sat.add_clause(Clause{1, 2});
    sat.add_clause(Clause{-1, 2});
    sat.add_clause(Clause{-2, 3});
    sat.set_num_vars(3);
    uint64_t s = 99;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    for (int t = 0; t < 500; t++) {
        Certificate c = good;
        c.fingerprint = formula_fingerprint(sat);
        c.root_nvars = sat.num_vars();
        c.root_nclauses = sat.num_clauses();
        for (int hit = 0; hit < 3; hit++) {
            ProofStep& st = c.steps[rnd() % c.steps.size()];
            switch (rnd() % 4) {
                case 0: st.axiom_index = 1 + (int)(rnd() % 4); break;
                case 1: st.pivot = 1 + (int)(rnd() % 4); break;
                case 2: st.left.id = 1 + (uint32_t)(rnd() % c.steps.size()); break;
                default: st.right.sub = (uint8_t)(rnd() % 4); break;
            }
        }
        try {
            if (check_certificate(sat, c).accepted) {
                // a formula with a model can never host an accepted
                // refutation: verify no target became the empty clause
                auto clauses = replay_step_clauses(sat, c);
                for (StepRef tr : c.targets)
                    CHECK_FALSE(clause_of_ref(sat, c, clauses, tr).empty());
            }
        } catch (const std::exception&) {
            // structured rejection paths may throw on replay; fine
        }
    }
}
