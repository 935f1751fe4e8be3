#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kerncert {

// Structured name of an encoding variable, e.g. X[3,1] or Y[2,5].
struct VarName {
    std::string tag;
    std::vector<int> indices;

    bool operator<(const VarName& o) const {
        if (tag != o.tag) return tag < o.tag;
        return indices < o.indices;
    }
    bool operator==(const VarName& o) const {
        return tag == o.tag && indices == o.indices;
    }
    std::string str() const;
};

VarName parse_var_name(const std::string& text);

// Dense injective map from semantic names to variable ids 1..size().
class VarRegistry {
  public:
    int register_var(const VarName& name);
    int register_var(std::string tag, std::initializer_list<int> idx) {
        return register_var(VarName{std::move(tag), idx});
    }
    int lookup(const VarName& name) const;
    std::optional<int> try_lookup(const VarName& name) const;
    const VarName& name_of(int var) const;
    int size() const { return static_cast<int>(names_.size()); }
    int next_free() const { return size() + 1; }

  private:
    std::map<VarName, int> ids_;
    std::vector<VarName> names_;
};

// Literals are nonzero ints, negative = negated variable.
using Lit = int;
inline int var_of(Lit l) { return l < 0 ? -l : l; }

// Sorted by variable, duplicate-free, never tautological.
class Clause {
  public:
    Clause() = default;
    explicit Clause(std::vector<Lit> lits);
    Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

    const std::vector<Lit>& lits() const { return lits_; }
    bool empty() const { return lits_.empty(); }
    size_t size() const { return lits_.size(); }
    bool contains(Lit l) const;
    bool operator==(const Clause& o) const { return lits_ == o.lits_; }

  private:
    std::vector<Lit> lits_;
};

struct ClauseHash {
    size_t operator()(const Clause& c) const {
        size_t h = 1469598103934665603ull;
        for (Lit l : c.lits()) {
            h ^= static_cast<size_t>(static_cast<int64_t>(l));
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct FormulaMeta {
    std::string problem;
    std::vector<std::pair<std::string, long>> params;
};

class Formula {
  public:
    Formula() = default;

    void add_clause(Clause c);
    void set_num_vars(int n);

    int num_vars() const { return num_vars_; }
    int num_clauses() const { return static_cast<int>(clauses_.size()); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(int index1) const; // 1-based

    VarRegistry& registry() { return registry_; }
    const VarRegistry& registry() const { return registry_; }
    FormulaMeta& meta() { return meta_; }
    const FormulaMeta& meta() const { return meta_; }

    // Index of a clause with the given content (1-based), if present.
    std::optional<int> find_clause(const Clause& c) const;

  private:
    int num_vars_ = 0;
    std::vector<Clause> clauses_;
    VarRegistry registry_;
    FormulaMeta meta_;
    mutable std::unordered_map<Clause, int, ClauseHash> index_;
    mutable size_t indexed_upto_ = 0;
};

using Assignment = std::vector<char>; // 1-based, values 0/1

bool eval_clause(const Clause& c, const Assignment& a);

// Requires a total assignment over all registered variables.
bool eval_formula(const Formula& f, const Assignment& a);

uint64_t fnv1a64(std::span<const unsigned char> bytes);

} // namespace kerncert
