#include "kerncert/social.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kerncert {

long factorial(int m) {
    long f = 1;
    for (int i = 2; i <= m; i++) f *= i;
    return f;
}

int perm_rank(const Pref& p) {
    int m = (int)p.size();
    int rank = 0;
    for (int i = 0; i < m; i++) {
        int smaller = 0;
        for (int j = i + 1; j < m; j++)
            if (p[j] < p[i]) smaller++;
        rank = rank * (m - i) + smaller;
    }
    return rank;
}

Pref perm_unrank(int m, int rank) {
    std::vector<int> avail;
    for (int i = 1; i <= m; i++) avail.push_back(i);
    long f = factorial(m);
    Pref p;
    for (int i = 0; i < m; i++) {
        f /= (m - i);
        int idx = (int)(rank / f);
        rank = (int)(rank % f);
        p.push_back(avail[idx]);
        avail.erase(avail.begin() + idx);
    }
    return p;
}

std::vector<Pref> all_prefs(int m) {
    std::vector<Pref> out;
    long f = factorial(m);
    for (long r = 0; r < f; r++) out.push_back(perm_unrank(m, (int)r));
    return out;
}

int pref_position(const Pref& p, int object) {
    for (size_t i = 0; i < p.size(); i++)
        if (p[i] == object) return (int)i + 1;
    throw std::runtime_error("object not in preference");
}

bool prefers(const Pref& p, int a, int b) { return pref_position(p, a) < pref_position(p, b); }

int top_of(const Pref& p) { return p.at(0); }

Pref drop_objects(const Pref& p, const std::vector<int>& b) {
    if (b.size() >= p.size()) throw std::runtime_error("cannot drop every object");
    Pref out;
    for (int x : p)
        if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
    return out;
}

Pref demote_objects(const Pref& p, const std::vector<int>& b) {
    Pref out = p;
    std::vector<int> tail = b;
    std::sort(tail.begin(), tail.end());
    for (int x : tail) out.push_back(x);
    return out;
}

ProfileSpace::ProfileSpace(int m_, int n_) : m(m_), n(n_) {
    fact = factorial(m);
    total = 1;
    for (int i = 0; i < n; i++) total *= fact;
    prefs = all_prefs(m);
}

long ProfileSpace::index_of(const std::vector<int>& agent_ranks) const {
    if ((int)agent_ranks.size() != n) throw std::runtime_error("profile arity mismatch");
    long idx = 0;
    for (int r : agent_ranks) {
        if (r < 0 || r >= fact) throw std::runtime_error("permutation rank out of range");
        idx = idx * fact + r;
    }
    return idx;
}

std::vector<int> ProfileSpace::ranks_of(long index) const {
    std::vector<int> out(n);
    for (int i = n - 1; i >= 0; i--) {
        out[i] = (int)(index % fact);
        index /= fact;
    }
    return out;
}

std::vector<int> pr_set(const Pref& ri, int o) {
    int rk = pref_position(ri, o);
    std::vector<int> out;
    for (int x : ri)
        if (pref_position(ri, x) >= rk) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> deviate(std::vector<int> agent_ranks, int agent1, int new_rank) {
    agent_ranks.at(agent1 - 1) = new_rank;
    return agent_ranks;
}

// ---------------------------------------------------------------------

namespace {

void check_table(int m, int n, size_t sz) {
    ProfileSpace ps(m, n);
    if ((long)sz != ps.total) throw std::runtime_error("table not total");
}

} // namespace

CheckOutcome is_unanimous(const SWFTable& w) {
    check_table(w.m, w.n, w.out.size());
    ProfileSpace ps(w.m, w.n);
    for (long idx = 0; idx < ps.total; idx++) {
        auto ranks = ps.ranks_of(idx);
        const Pref& agg = ps.prefs[w.out[idx]];
        for (int a = 1; a <= w.m; a++)
            for (int b = 1; b <= w.m; b++) {
                if (a == b) continue;
                bool all = true;
                for (int i = 0; i < w.n; i++)
                    if (!prefers(ps.prefs[ranks[i]], a, b)) {
                        all = false;
                        break;
                    }
                if (all && !prefers(agg, a, b))
                    return {false, "profile " + std::to_string(idx) + " objects " +
                                       std::to_string(a) + "," + std::to_string(b)};
            }
    }
    return {true, ""};
}

CheckOutcome is_iia(const SWFTable& w) {
    if (w.m > 3 || w.n > 2) throw std::runtime_error("IIA checker guard exceeded (m<=3, n<=2)");
    check_table(w.m, w.n, w.out.size());
    ProfileSpace ps(w.m, w.n);
    for (long i1 = 0; i1 < ps.total; i1++) {
        auto r1 = ps.ranks_of(i1);
        for (long i2 = 0; i2 < ps.total; i2++) {
            auto r2 = ps.ranks_of(i2);
            for (int a = 1; a <= w.m; a++)
                for (int b = a + 1; b <= w.m; b++) {
                    bool agree = true;
                    for (int i = 0; i < w.n && agree; i++)
                        agree = prefers(ps.prefs[r1[i]], a, b) == prefers(ps.prefs[r2[i]], a, b);
                    if (!agree) continue;
                    if (prefers(ps.prefs[w.out[i1]], a, b) != prefers(ps.prefs[w.out[i2]], a, b))
                        return {false, "profiles " + std::to_string(i1) + "," +
                                           std::to_string(i2) + " objects " + std::to_string(a) +
                                           "," + std::to_string(b)};
                }
        }
    }
    return {true, ""};
}

CheckOutcome is_dictatorial(const SWFTable& w) {
    check_table(w.m, w.n, w.out.size());
    ProfileSpace ps(w.m, w.n);
    for (int i = 0; i < w.n; i++) {
        bool dict = true;
        for (long idx = 0; idx < ps.total && dict; idx++)
            dict = w.out[idx] == ps.ranks_of(idx)[i];
        if (dict) return {true, "agent " + std::to_string(i + 1)};
    }
    return {false, ""};
}

CheckOutcome is_dictatorial(const SCFTable& w) {
    check_table(w.m, w.n, w.out.size());
    ProfileSpace ps(w.m, w.n);
    for (int i = 0; i < w.n; i++) {
        bool dict = true;
        for (long idx = 0; idx < ps.total && dict; idx++)
            dict = w.out[idx] == top_of(ps.prefs[ps.ranks_of(idx)[i]]);
        if (dict) return {true, "agent " + std::to_string(i + 1)};
    }
    return {false, ""};
}

CheckOutcome is_onto(const SCFTable& w) {
    check_table(w.m, w.n, w.out.size());
    std::vector<char> hit(w.m + 1, 0);
    for (int o : w.out) hit.at(o) = 1;
    for (int o = 1; o <= w.m; o++)
        if (!hit[o]) return {false, "object " + std::to_string(o)};
    return {true, ""};
}

CheckOutcome is_strategyproof(const SCFTable& w) {
    if (w.m > 3 || w.n > 3)
        throw std::runtime_error("strategyproofness checker guard exceeded (m<=3, n<=3)");
    check_table(w.m, w.n, w.out.size());
    ProfileSpace ps(w.m, w.n);
    for (long idx = 0; idx < ps.total; idx++) {
        auto ranks = ps.ranks_of(idx);
        int o = w.out[idx];
        for (int i = 1; i <= w.n; i++) {
            const Pref& ri = ps.prefs[ranks[i - 1]];
            for (int r = 0; r < ps.fact; r++) {
                if (r == ranks[i - 1]) continue;
                long jdx = ps.index_of(deviate(ranks, i, r));
                int o2 = w.out[jdx];
                if (pref_position(ri, o2) < pref_position(ri, o))
                    return {false, "agent " + std::to_string(i) + " at profile " +
                                       std::to_string(idx) + " deviates to rank " +
                                       std::to_string(r)};
            }
        }
    }
    return {true, ""};
}

SWFTable dictator_swf(int m, int n, int agent) {
    ProfileSpace ps(m, n);
    SWFTable t{m, n, {}};
    t.out.resize(ps.total);
    for (long idx = 0; idx < ps.total; idx++) t.out[idx] = ps.ranks_of(idx)[agent - 1];
    return t;
}

SCFTable dictator_scf(int m, int n, int agent) {
    ProfileSpace ps(m, n);
    SCFTable t{m, n, {}};
    t.out.resize(ps.total);
    for (long idx = 0; idx < ps.total; idx++)
        t.out[idx] = top_of(ps.prefs[ps.ranks_of(idx)[agent - 1]]);
    return t;
}

namespace {

// ascending relabel map for [m] minus b
std::vector<int> survivors(int m, const std::vector<int>& b) {
    std::vector<int> s;
    for (int x = 1; x <= m; x++)
        if (std::find(b.begin(), b.end(), x) == b.end()) s.push_back(x);
    return s;
}

} // namespace

SWFTable restrict_swf(const SWFTable& w, const std::vector<int>& b) {
    auto sur = survivors(w.m, b);
    int m2 = (int)sur.size();
    if (m2 == 0) throw std::runtime_error("cannot restrict away every object");
    ProfileSpace ps2(m2, w.n), ps(w.m, w.n);
    SWFTable t{m2, w.n, {}};
    t.out.resize(ps2.total);
    for (long idx = 0; idx < ps2.total; idx++) {
        auto ranks2 = ps2.ranks_of(idx);
        std::vector<int> ranks;
        for (int i = 0; i < w.n; i++) {
            Pref relabeled;
            for (int x : ps2.prefs[ranks2[i]]) relabeled.push_back(sur[x - 1]);
            ranks.push_back(perm_rank(demote_objects(relabeled, b)));
        }
        Pref agg = drop_objects(ps.prefs[w.out[ps.index_of(ranks)]], b);
        Pref agg2;
        for (int x : agg)
            agg2.push_back((int)(std::find(sur.begin(), sur.end(), x) - sur.begin()) + 1);
        t.out[idx] = perm_rank(agg2);
    }
    return t;
}

SCFTable restrict_scf(const SCFTable& w, const std::vector<int>& b) {
    auto sur = survivors(w.m, b);
    int m2 = (int)sur.size();
    if (m2 == 0) throw std::runtime_error("cannot restrict away every object");
    ProfileSpace ps2(m2, w.n), ps(w.m, w.n);
    SCFTable t{m2, w.n, {}};
    t.out.resize(ps2.total);
    for (long idx = 0; idx < ps2.total; idx++) {
        auto ranks2 = ps2.ranks_of(idx);
        std::vector<int> ranks;
        for (int i = 0; i < w.n; i++) {
            Pref relabeled;
            for (int x : ps2.prefs[ranks2[i]]) relabeled.push_back(sur[x - 1]);
            ranks.push_back(perm_rank(demote_objects(relabeled, b)));
        }
        int o = w.out[ps.index_of(ranks)];
        auto it = std::find(sur.begin(), sur.end(), o);
        if (it == sur.end()) {
            std::ostringstream os;
            os << "restriction ill-defined: profile " << idx << " maps into the dropped set";
            throw std::runtime_error(os.str());
        }
        t.out[idx] = (int)(it - sur.begin()) + 1;
    }
    return t;
}

namespace {

template <typename Table>
Table merge_impl(const Table& w, int a, int b) {
    if (w.n < 2 || a == b) throw std::runtime_error("merge needs two distinct agents");
    ProfileSpace ps(w.m, w.n), ps2(w.m, w.n - 1);
    Table t;
    t.m = w.m;
    t.n = w.n - 1;
    t.out.resize(ps2.total);
    int b_child = b - (b > a ? 1 : 0);
    for (long idx = 0; idx < ps2.total; idx++) {
        auto child = ps2.ranks_of(idx);
        std::vector<int> parent;
        int ci = 0;
        for (int i = 1; i <= w.n; i++) {
            if (i == a) parent.push_back(child[b_child - 1]);
            else parent.push_back(child[ci++]);
        }
        t.out[idx] = w.out[ps.index_of(parent)];
    }
    return t;
}

} // namespace

SWFTable merge_agents(const SWFTable& w, int a, int b) { return merge_impl(w, a, b); }
SCFTable merge_agents(const SCFTable& w, int a, int b) { return merge_impl(w, a, b); }

// ---------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> parse_profile_lines(std::istream& in,
                                                  std::vector<std::string>& outcomes) {
    std::vector<std::vector<int>> agent_prefs_flat;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw std::runtime_error("table line missing '->'");
        std::string lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
        std::vector<int> flat;
        std::istringstream ls(lhs);
        std::string tok;
        while (ls >> tok) {
            if (tok == "|") {
                flat.push_back(0); // separator marker
                continue;
            }
            flat.push_back(std::stoi(tok));
        }
        agent_prefs_flat.push_back(flat);
        outcomes.push_back(rhs);
    }
    return agent_prefs_flat;
}

std::vector<Pref> split_prefs(const std::vector<int>& flat) {
    std::vector<Pref> prefs(1);
    for (int x : flat) {
        if (x == 0) prefs.emplace_back();
        else prefs.back().push_back(x);
    }
    return prefs;
}

} // namespace

void scf_write(const SCFTable& t, std::ostream& out) {
    ProfileSpace ps(t.m, t.n);
    for (long idx = 0; idx < ps.total; idx++) {
        auto ranks = ps.ranks_of(idx);
        for (int i = 0; i < t.n; i++) {
            if (i) out << "| ";
            for (int x : ps.prefs[ranks[i]]) out << x << ' ';
        }
        out << "-> " << t.out[idx] << '\n';
    }
}

SCFTable scf_read(std::istream& in) {
    std::vector<std::string> outcomes;
    auto rows = parse_profile_lines(in, outcomes);
    if (rows.empty()) throw std::runtime_error("empty table");
    auto first = split_prefs(rows[0]);
    SCFTable t;
    t.n = (int)first.size();
    t.m = (int)first[0].size();
    ProfileSpace ps(t.m, t.n);
    t.out.assign(ps.total, 0);
    std::vector<char> seen(ps.total, 0);
    for (size_t r = 0; r < rows.size(); r++) {
        auto prefs = split_prefs(rows[r]);
        if ((int)prefs.size() != t.n) throw std::runtime_error("inconsistent agent count");
        std::vector<int> ranks;
        for (auto& p : prefs) ranks.push_back(perm_rank(p));
        long idx = ps.index_of(ranks);
        t.out[idx] = std::stoi(outcomes[r]);
        if (t.out[idx] < 1 || t.out[idx] > t.m) throw std::runtime_error("outcome out of range");
        seen[idx] = 1;
    }
    for (long idx = 0; idx < ps.total; idx++)
        if (!seen[idx])
            throw std::runtime_error("table not total: missing profile " + std::to_string(idx));
    return t;
}

void swf_write(const SWFTable& t, std::ostream& out) {
    ProfileSpace ps(t.m, t.n);
    for (long idx = 0; idx < ps.total; idx++) {
        auto ranks = ps.ranks_of(idx);
        for (int i = 0; i < t.n; i++) {
            if (i) out << "| ";
            for (int x : ps.prefs[ranks[i]]) out << x << ' ';
        }
        out << "->";
        for (int x : ps.prefs[t.out[idx]]) out << ' ' << x;
        out << '\n';
    }
}

SWFTable swf_read(std::istream& in) {
    std::vector<std::string> outcomes;
    auto rows = parse_profile_lines(in, outcomes);
    if (rows.empty()) throw std::runtime_error("empty table");
    auto first = split_prefs(rows[0]);
    SWFTable t;
    t.n = (int)first.size();
    t.m = (int)first[0].size();
    ProfileSpace ps(t.m, t.n);
    t.out.assign(ps.total, 0);
    std::vector<char> seen(ps.total, 0);
    for (size_t r = 0; r < rows.size(); r++) {
        auto prefs = split_prefs(rows[r]);
        std::vector<int> ranks;
        for (auto& p : prefs) ranks.push_back(perm_rank(p));
        long idx = ps.index_of(ranks);
        std::istringstream os(outcomes[r]);
        Pref agg;
        int x;
        while (os >> x) agg.push_back(x);
        if ((int)agg.size() != t.m) throw std::runtime_error("bad ordering outcome");
        t.out[idx] = perm_rank(agg);
        seen[idx] = 1;
    }
    for (long idx = 0; idx < ps.total; idx++)
        if (!seen[idx])
            throw std::runtime_error("table not total: missing profile " + std::to_string(idx));
    return t;
}

PreservationReport preservation_tests(uint64_t seed, int samples) {
    PreservationReport rep;
    uint64_t state = seed;
    auto next = [&]() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    const int m = 3, n = 2;
    for (int s = 0; s < samples; s++) {
        int agent = 1 + (int)(next() % n);
        int dropped = 1 + (int)(next() % m);
        SWFTable w = dictator_swf(m, n, agent);
        SWFTable r = restrict_swf(w, {dropped});
        rep.swf_cases++;
        if (!is_unanimous(r).holds || !is_iia(r).holds) {
            rep.swf_failures++;
            rep.failures.push_back("swf dictator agent " + std::to_string(agent) + " drop " +
                                   std::to_string(dropped));
        }
        SCFTable w2 = dictator_scf(m, n, agent);
        SCFTable r2 = restrict_scf(w2, {dropped});
        rep.scf_cases++;
        if (!is_onto(r2).holds || !is_strategyproof(r2).holds) {
            rep.scf_failures++;
            rep.failures.push_back("scf dictator agent " + std::to_string(agent) + " drop " +
                                   std::to_string(dropped));
        }
    }
    return rep;
}

} // namespace kerncert
