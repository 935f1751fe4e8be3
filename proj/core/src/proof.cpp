#include "kerncert/proof.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace kerncert {

std::string StepRef::str() const {
    std::string s = std::to_string(id);
    if (sub) s += "." + std::to_string(sub);
    return s;
}

ProofStep ProofStep::mk_axiom(int index1) {
    ProofStep s;
    s.kind = StepKind::Axiom;
    s.axiom_index = index1;
    return s;
}

ProofStep ProofStep::mk_resolve(StepRef a, StepRef b, int pivot_var) {
    ProofStep s;
    s.kind = StepKind::Resolve;
    s.left = a;
    s.right = b;
    s.pivot = pivot_var;
    return s;
}

ProofStep ProofStep::mk_gate_and(int var, Lit l1, Lit l2) {
    ProofStep s;
    s.kind = StepKind::GateAnd;
    s.gate_var = var;
    s.gate_l1 = l1;
    s.gate_l2 = l2;
    return s;
}

ProofStep ProofStep::mk_gate_or(int var, Lit l1, Lit l2) {
    ProofStep s;
    s.kind = StepKind::GateOr;
    s.gate_var = var;
    s.gate_l1 = l1;
    s.gate_l2 = l2;
    return s;
}

ProofStep ProofStep::mk_weaken(StepRef a, std::vector<Lit> added) {
    ProofStep s;
    s.kind = StepKind::Weaken;
    s.left = a;
    s.weaken_lits = std::move(added);
    return s;
}

Clause gate_defining_clause(const ProofStep& s, int sub) {
    int v = s.gate_var;
    Lit a = s.gate_l1, b = s.gate_l2;
    bool is_and = s.kind == StepKind::GateAnd;
    switch (sub) {
        case 1: return is_and ? Clause{-v, a} : Clause{v, -a};
        case 2: return is_and ? Clause{-v, b} : Clause{v, -b};
        case 3: return is_and ? Clause{v, -a, -b} : Clause{-v, a, b};
        default: throw std::runtime_error("gate sub-index out of range");
    }
}

Clause resolve_clauses(const Clause& a, const Clause& b, int pivot_var) {
    bool pos_in_a = a.contains(pivot_var), neg_in_a = a.contains(-pivot_var);
    bool pos_in_b = b.contains(pivot_var), neg_in_b = b.contains(-pivot_var);
    if (!((pos_in_a && neg_in_b) || (neg_in_a && pos_in_b)))
        throw std::runtime_error("pivot " + std::to_string(pivot_var) +
                                 " must occur positively in one clause and negatively in the other");
    std::vector<Lit> out;
    out.reserve(a.size() + b.size());
    for (Lit l : a.lits())
        if (var_of(l) != pivot_var) out.push_back(l);
    for (Lit l : b.lits())
        if (var_of(l) != pivot_var) out.push_back(l);
    return Clause(std::move(out)); // Clause ctor rejects tautologies
}

uint64_t SizeReport::subtotal_sum() const {
    uint64_t s = 0;
    for (auto& [_, n] : fragment_subtotals) s += n;
    return s;
}

uint64_t count_step_clauses(const Certificate& c) {
    uint64_t n = 0;
    for (const ProofStep& s : c.steps)
        n += (s.kind == StepKind::GateAnd || s.kind == StepKind::GateOr) ? 3 : 1;
    return n;
}

uint64_t count_step_lines(const Certificate& c) { return c.steps.size(); }

uint64_t count_extension_vars(const Certificate& c) {
    uint64_t n = 0;
    for (const ProofStep& s : c.steps)
        if (s.kind == StepKind::GateAnd || s.kind == StepKind::GateOr) n++;
    return n;
}

BoundEstimate bound_evaluate(long double h, long double two_pow_g, uint64_t branching_R,
                             uint64_t chain_C) {
    const long double cap = 1e300L;
    long double tree = 0, pw = 1;
    bool sat = false;
    for (uint64_t i = 0; i <= chain_C; i++) {
        tree += pw;
        if (tree > cap || pw > cap) {
            sat = true;
            tree = cap;
            break;
        }
        pw *= static_cast<long double>(branching_R);
    }
    long double val = tree * (h + two_pow_g);
    if (val > cap) {
        sat = true;
        val = cap;
    }
    return {val, sat};
}

void certificate_write(const Certificate& c, std::ostream& out) {
    char fp[32];
    snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(c.fingerprint));
    out << "p ecert " << c.root_nvars << ' ' << c.root_nclauses << ' ' << fp << '\n';
    for (const ProofStep& s : c.steps) {
        switch (s.kind) {
            case StepKind::Axiom: out << "A " << s.axiom_index << '\n'; break;
            case StepKind::Resolve:
                out << "R " << s.left.str() << ' ' << s.right.str() << ' ' << s.pivot << '\n';
                break;
            case StepKind::GateAnd:
                out << "GA " << s.gate_var << ' ' << s.gate_l1 << ' ' << s.gate_l2 << '\n';
                break;
            case StepKind::GateOr:
                out << "GO " << s.gate_var << ' ' << s.gate_l1 << ' ' << s.gate_l2 << '\n';
                break;
            case StepKind::Weaken: {
                out << "W " << s.left.str();
                for (Lit l : s.weaken_lits) out << ' ' << l;
                out << " 0\n";
                break;
            }
        }
    }
    for (const StepRef& t : c.targets) out << "T " << t.str() << '\n';
}

std::string certificate_string(const Certificate& c) {
    std::ostringstream os;
    certificate_write(c, os);
    return os.str();
}

namespace {

StepRef parse_ref(const std::string& tok, int line) {
    StepRef r;
    auto dot = tok.find('.');
    try {
        r.id = static_cast<uint32_t>(std::stoul(tok.substr(0, dot)));
        if (dot != std::string::npos) {
            int sub = std::stoi(tok.substr(dot + 1));
            if (sub < 1 || sub > 3) throw std::out_of_range("sub");
            r.sub = static_cast<uint8_t>(sub);
        }
    } catch (const std::exception&) {
        throw std::runtime_error("certificate parse error at line " + std::to_string(line) +
                                 ": bad step reference '" + tok + "'");
    }
    return r;
}

} // namespace

Certificate certificate_read(std::istream& in) {
    Certificate c;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream is(line);
        std::string op;
        is >> op;
        if (op == "p") {
            std::string kind, fp;
            if (!(is >> kind >> c.root_nvars >> c.root_nclauses >> fp) || kind != "ecert")
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": bad header");
            c.fingerprint = std::stoull(fp, nullptr, 16);
            have_header = true;
        } else if (op == "A") {
            int idx;
            if (!(is >> idx))
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": bad axiom");
            c.add(ProofStep::mk_axiom(idx));
        } else if (op == "R") {
            std::string a, b;
            int pivot;
            if (!(is >> a >> b >> pivot))
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": bad resolution");
            c.add(ProofStep::mk_resolve(parse_ref(a, lineno), parse_ref(b, lineno), pivot));
        } else if (op == "GA" || op == "GO") {
            int v;
            Lit l1, l2;
            if (!(is >> v >> l1 >> l2))
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": bad gate");
            c.add(op == "GA" ? ProofStep::mk_gate_and(v, l1, l2)
                             : ProofStep::mk_gate_or(v, l1, l2));
        } else if (op == "W") {
            std::string a;
            if (!(is >> a))
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": bad weakening");
            std::vector<Lit> lits;
            Lit l;
            bool closed = false;
            while (is >> l) {
                if (l == 0) {
                    closed = true;
                    break;
                }
                lits.push_back(l);
            }
            if (!closed)
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": unterminated weakening");
            c.add(ProofStep::mk_weaken(parse_ref(a, lineno), std::move(lits)));
        } else if (op == "T") {
            std::string t;
            if (!(is >> t))
                throw std::runtime_error("certificate parse error at line " +
                                         std::to_string(lineno) + ": bad target");
            c.targets.push_back(parse_ref(t, lineno));
        } else {
            throw std::runtime_error("certificate parse error at line " + std::to_string(lineno) +
                                     ": unknown op '" + op + "'");
        }
    }
    if (!have_header) throw std::runtime_error("certificate parse error: missing header");
    return c;
}

Certificate certificate_read_string(const std::string& text) {
    std::istringstream is(text);
    return certificate_read(is);
}

} // namespace kerncert
