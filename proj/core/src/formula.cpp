#include "kerncert/formula.hpp"

#include <algorithm>
#include <sstream>

namespace kerncert {

std::string VarName::str() const {
    std::ostringstream os;
    os << tag << '[';
    for (size_t i = 0; i < indices.size(); i++) {
        if (i) os << ',';
        os << indices[i];
    }
    os << ']';
    return os.str();
}

VarName parse_var_name(const std::string& text) {
    auto lb = text.find('[');
    auto rb = text.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw std::runtime_error("malformed variable name: " + text);
    VarName n;
    n.tag = text.substr(0, lb);
    std::string inner = text.substr(lb + 1, rb - lb - 1);
    std::istringstream is(inner);
    std::string part;
    while (std::getline(is, part, ','))
        if (!part.empty()) n.indices.push_back(std::stoi(part));
    return n;
}

int VarRegistry::register_var(const VarName& name) {
    auto [it, fresh] = ids_.emplace(name, next_free());
    if (!fresh)
        throw std::runtime_error("duplicate variable registration: " + name.str());
    names_.push_back(name);
    return it->second;
}

int VarRegistry::lookup(const VarName& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end())
        throw std::runtime_error("unregistered variable: " + name.str());
    return it->second;
}

std::optional<int> VarRegistry::try_lookup(const VarName& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const VarName& VarRegistry::name_of(int var) const {
    if (var < 1 || var > size())
        throw std::runtime_error("variable id out of range: " + std::to_string(var));
    return names_[var - 1];
}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
    for (Lit l : lits_)
        if (l == 0) throw std::runtime_error("zero literal in clause");
    std::sort(lits_.begin(), lits_.end(),
              [](Lit a, Lit b) { return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b; });
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (size_t i = 0; i + 1 < lits_.size(); i++)
        if (var_of(lits_[i]) == var_of(lits_[i + 1]))
            throw std::runtime_error("tautological clause rejected (var " +
                                     std::to_string(var_of(lits_[i])) + ")");
}

bool Clause::contains(Lit l) const {
    return std::binary_search(
        lits_.begin(), lits_.end(), l,
        [](Lit a, Lit b) { return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b; });
}

void Formula::add_clause(Clause c) {
    for (Lit l : c.lits()) num_vars_ = std::max(num_vars_, var_of(l));
    clauses_.push_back(std::move(c));
}

void Formula::set_num_vars(int n) {
    if (n < num_vars_)
        throw std::runtime_error("cannot shrink variable count below used variables");
    num_vars_ = n;
}

const Clause& Formula::clause(int index1) const {
    if (index1 < 1 || index1 > num_clauses())
        throw std::runtime_error("clause index out of range: " + std::to_string(index1));
    return clauses_[index1 - 1];
}

std::optional<int> Formula::find_clause(const Clause& c) const {
    while (indexed_upto_ < clauses_.size()) {
        index_.emplace(clauses_[indexed_upto_], static_cast<int>(indexed_upto_) + 1);
        indexed_upto_++;
    }
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool eval_clause(const Clause& c, const Assignment& a) {
    for (Lit l : c.lits()) {
        int v = var_of(l);
        if (v >= static_cast<int>(a.size()))
            throw std::runtime_error("assignment missing variable " + std::to_string(v));
        if ((l > 0) == (a[v] != 0)) return true;
    }
    return false;
}

bool eval_formula(const Formula& f, const Assignment& a) {
    int need = std::max(f.num_vars(), f.registry().size());
    if (static_cast<int>(a.size()) < need + 1) {
        std::string missing;
        for (int v = static_cast<int>(a.size()); v <= need; v++)
            missing += (missing.empty() ? "" : ",") + std::to_string(v);
        throw std::runtime_error("partial assignment, missing vars: " + missing);
    }
    for (const Clause& c : f.clauses())
        if (!eval_clause(c, a)) return false;
    return true;
}

uint64_t fnv1a64(std::span<const unsigned char> bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace kerncert
