#include "kerncert/dimacs.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace kerncert {

void dimacs_write(const Formula& f, std::ostream& out) {
    out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
    for (const Clause& c : f.clauses()) {
        for (Lit l : c.lits()) out << l << ' ';
        out << "0\n";
    }
}

std::string dimacs_string(const Formula& f) {
    std::ostringstream os;
    dimacs_write(f, os);
    return os.str();
}

uint64_t formula_fingerprint(const Formula& f) {
    std::string s = dimacs_string(f);
    return fnv1a64({reinterpret_cast<const unsigned char*>(s.data()), s.size()});
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::runtime_error("dimacs parse error at line " + std::to_string(line) + ": " + what);
}

} // namespace

Formula dimacs_read(std::istream& in) {
    Formula f;
    std::string line;
    int lineno = 0;
    long nv = -1, nc = -1;
    std::vector<Lit> cur;
    long seen = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream is(line);
            std::string p, cnf;
            if (!(is >> p >> cnf >> nv >> nc) || cnf != "cnf" || nv < 0 || nc < 0)
                parse_fail(lineno, "malformed header '" + line + "'");
            continue;
        }
        if (nv < 0) parse_fail(lineno, "clause before header");
        std::istringstream is(line);
        std::string tok;
        while (is >> tok) {
            long v;
            try {
                size_t pos = 0;
                v = std::stol(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                parse_fail(lineno, "bad literal token '" + tok + "'");
            }
            if (v == 0) {
                f.add_clause(Clause(cur));
                cur.clear();
                seen++;
            } else {
                if (v > nv || -v > nv)
                    parse_fail(lineno, "literal " + tok + " exceeds declared variable count");
                cur.push_back(static_cast<Lit>(v));
            }
        }
    }
    if (nv < 0) throw std::runtime_error("dimacs parse error: missing header");
    if (!cur.empty()) throw std::runtime_error("dimacs parse error: unterminated final clause");
    if (seen != nc)
        throw std::runtime_error("dimacs parse error: header declares " + std::to_string(nc) +
                                 " clauses, found " + std::to_string(seen));
    f.set_num_vars(static_cast<int>(nv));
    return f;
}

Formula dimacs_read_string(const std::string& text) {
    std::istringstream is(text);
    return dimacs_read(is);
}

void semantic_map_write(const Formula& f, std::ostream& out) {
    const VarRegistry& r = f.registry();
    for (int v = 1; v <= r.size(); v++) out << v << ' ' << r.name_of(v).str() << '\n';
}

} // namespace kerncert
