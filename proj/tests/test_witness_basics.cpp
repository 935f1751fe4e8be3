#include <doctest.h>

#include "kerncert/checker.hpp"
#include "kerncert/compose.hpp"
#include "kerncert/dimacs.hpp"
#include "kerncert/witness.hpp"

using namespace kerncert;

TEST_CASE("pigeonhole refutations check out up to seven holes") {
    for (int h = 1; h <= 7; h++) {
        Certificate c = emit_php_refutation(h + 1, h);
        CHECK(is_accepted_refutation(php_formula(h + 1, h), c));
    }
    // two pigeons, one hole: two resolutions suffice
    Certificate tiny = emit_php_refutation(2, 1);
    int resolutions = 0;
    for (const ProofStep& s : tiny.steps)
        if (s.kind == StepKind::Resolve) resolutions++;
    CHECK(resolutions == 2);
    CHECK(tiny.steps.size() <= 5);
    CHECK_THROWS(emit_php_refutation(3, 3));

    // extra pigeons stay unused but the certificate still applies
    Certificate wide = emit_php_refutation(5, 2);
    CHECK(is_accepted_refutation(php_formula(5, 2), wide));
}

TEST_CASE("count gadget output follows the popcount under propagation") {
    uint64_t s = 3;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    SUBCASE("threshold zero is constant true") {
        int next = 6;
        std::vector<GateDef> gates;
        CountGadget g = emit_count_gadget({1, 2, 3}, 0, next, gates);
        CHECK_FALSE(g.output.has_value());
        CHECK(gates.empty());
    }
    SUBCASE("three inputs at threshold two") {
        int next = 6;
        std::vector<GateDef> gates;
        CountGadget g = emit_count_gadget({1, 2, 3}, 2, next, gates);
        REQUIRE(g.output.has_value());
        auto val = propagate_gate_value(gates, {{1, true}, {2, true}, {3, false}}, *g.output);
        REQUIRE(val.has_value());
        CHECK(*val);
        val = propagate_gate_value(gates, {{1, true}, {2, false}, {3, false}}, *g.output);
        REQUIRE(val.has_value());
        CHECK_FALSE(*val);
    }
    SUBCASE("random assignments over five inputs, threshold three") {
        for (int t = 0; t < 8; t++) {
            int next = 10;
            std::vector<GateDef> gates;
            CountGadget g = emit_count_gadget({1, 2, 3, 4, 5}, 3, next, gates);
            std::vector<std::pair<int, bool>> fixed;
            int pop = 0;
            for (int v = 1; v <= 5; v++) {
                bool bit = rnd() % 2;
                pop += bit;
                fixed.push_back({v, bit});
            }
            auto val = propagate_gate_value(gates, fixed, *g.output);
            REQUIRE(val.has_value());
            CHECK(*val == (pop >= 3));
        }
    }
}

TEST_CASE("clause derivation through the search engine lands exactly") {
    Formula f;
    f.add_clause(Clause{1, 2});
    f.add_clause(Clause{-2, 3});
    f.set_num_vars(3);
    CertBuilder b(f);
    std::vector<StepRef> refs{b.axiom(1), b.axiom(2)};
    StepRef r = derive_clause_by_refutation(b, refs, Clause{1, 3});
    CHECK(b.clause_of(r) == Clause({1, 3}));
    b.mark_target(r);
    CHECK(check_certificate(f, b.current()).accepted);

    CHECK_THROWS(derive_clause_by_refutation(b, refs, Clause{1})); // not entailed
}
