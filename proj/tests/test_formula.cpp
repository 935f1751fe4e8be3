#include <doctest.h>

#include <sstream>

#include "kerncert/dimacs.hpp"
#include "kerncert/encoders.hpp"
#include "kerncert/formula.hpp"
#include "kerncert/graph.hpp"

using namespace kerncert;

TEST_CASE("registry assigns dense ids and rejects duplicates") {
    VarRegistry r;
    CHECK(r.register_var({"X", {1, 1}}) == 1);
    for (int i = 2; i <= 9; i++) CHECK(r.register_var({"T", {i}}) == i);
    CHECK(r.next_free() == 10);
    CHECK(r.lookup({"X", {1, 1}}) == 1);
    CHECK(r.name_of(1).str() == "X[1,1]");
    CHECK_THROWS(r.register_var({"X", {1, 1}}));
    CHECK(parse_var_name("X[1,1]") == VarName{"X", {1, 1}});
}

TEST_CASE("clauses reject tautologies and deduplicate") {
    Clause c({3, -1, 3});
    CHECK(c.lits() == std::vector<Lit>{-1, 3});
    CHECK_THROWS(Clause({1, -1}));
    CHECK(Clause{}.empty());
}

TEST_CASE("eval_formula demands total assignments") {
    Formula f;
    f.add_clause(Clause{1});
    f.add_clause(Clause{-1});
    Assignment a(2, 0);
    a[1] = 1;
    CHECK_FALSE(eval_formula(f, a));
    a[1] = 0;
    CHECK_FALSE(eval_formula(f, a));
    CHECK_THROWS(eval_formula(f, Assignment{}));
}

TEST_CASE("proper colorings satisfy the coloring encoding") {
    // triangle with 3 colors: color vertex v with v
    Graph k3(3);
    k3.add_edge(1, 2);
    k3.add_edge(1, 3);
    k3.add_edge(2, 3);
    Formula f = encode_coloring(k3, 3);
    Assignment a(f.num_vars() + 1, 0);
    for (int v = 1; v <= 3; v++) a[f.registry().lookup({"X", {v, v}})] = 1;
    for (int u = 1; u <= 3; u++)
        for (int v = u + 1; v <= 3; v++) a[f.registry().lookup({"Y", {u, v}})] = 1;
    CHECK(eval_formula(f, a));

    // two colors: every assignment fails
    Formula f2 = encode_coloring(k3, 2);
    REQUIRE(f2.num_vars() == 9);
    REQUIRE(f2.num_clauses() == 15);
    int sat = 0;
    for (int mask = 0; mask < (1 << 9); mask++) {
        Assignment b(10, 0);
        for (int i = 0; i < 9; i++) b[i + 1] = (mask >> i) & 1;
        if (eval_formula(f2, b)) sat++;
    }
    CHECK(sat == 0);
}

TEST_CASE("eval agrees with an independent evaluator on random formulas") {
    // second implementation: straight double loop over raw literal lists
    auto eval2 = [](const Formula& f, const Assignment& a) {
        for (const Clause& c : f.clauses()) {
            bool any = false;
            for (Lit l : c.lits()) {
                bool val = a[var_of(l)] != 0;
                if (l < 0) val = !val;
                any = any || val;
            }
            if (!any) return false;
        }
        return true;
    };
    uint64_t s = 42;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    for (int t = 0; t < 1000; t++) {
        int nv = 1 + (int)(rnd() % 6);
        Formula f;
        int nc = (int)(rnd() % 8);
        for (int c = 0; c < nc; c++) {
            std::vector<Lit> lits;
            for (int v = 1; v <= nv; v++) {
                int r = (int)(rnd() % 3);
                if (r == 0) lits.push_back(v);
                else if (r == 1) lits.push_back(-v);
            }
            if (lits.empty()) lits.push_back(1);
            f.add_clause(Clause(lits));
        }
        f.set_num_vars(nv);
        Assignment a(nv + 1, 0);
        for (int v = 1; v <= nv; v++) a[v] = rnd() % 2;
        CHECK(eval_formula(f, a) == eval2(f, a));
    }
}

TEST_CASE("dimacs round trip is stable") {
    Formula empty;
    CHECK(dimacs_string(empty) == "p cnf 0 0\n");

    Formula f;
    f.add_clause(Clause{1, -2});
    CHECK(dimacs_string(f) == "p cnf 2 1\n1 -2 0\n");

    Formula g = dimacs_read_string(dimacs_string(f));
    CHECK(g.num_vars() == f.num_vars());
    CHECK(g.clauses() == f.clauses());

    CHECK_THROWS_WITH_AS(dimacs_read_string("p cnf x 1\n"),
                         doctest::Contains("line 1"), std::runtime_error);
    CHECK_THROWS_WITH_AS(dimacs_read_string("p cnf 2 1\n1 zz 0\n"),
                         doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("arrow encoding round trips through dimacs with 216 variables") {
    Formula f = encode_arrow(3, 2);
    REQUIRE(f.num_vars() == 216);
    Formula g = dimacs_read_string(dimacs_string(f));
    CHECK(g.num_vars() == 216);
    CHECK(g.clauses() == f.clauses());
    CHECK(formula_fingerprint(g) == formula_fingerprint(f));
}

TEST_CASE("encoders register every variable into some clause") {
    for (const Formula& f : {encode_coloring(build_kneser(5, 2), 3), encode_arrow(3, 2),
                             encode_gs(3, 2), encode_vertex_cover(build_kneser(4, 2), 2)}) {
        std::vector<char> seen(f.num_vars() + 1, 0);
        for (const Clause& c : f.clauses())
            for (Lit l : c.lits()) seen[var_of(l)] = 1;
        for (int v = 1; v <= f.num_vars(); v++) CHECK(seen[v]);
    }
}
