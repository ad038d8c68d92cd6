#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symbound/polynomial.hpp"

namespace symbound {

enum class FnSym { Floor, Reciprocal };

std::string fn_name(FnSym f);

/// Assignments u -> f(p) produced by purification. Arguments are pure
/// polynomials (purification is recursive), and the map is acyclic: the
/// argument of u only mentions variables created before u.
class ForeignFunctionMap {
public:
    struct Entry {
        VarId var;
        FnSym fn;
        Polynomial arg;
    };

    void add(VarId var, FnSym fn, Polynomial arg);
    const std::vector<Entry>& entries() const { return entries_; }
    std::vector<Entry>& mutable_entries() { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    bool contains(VarId v) const;
    const Entry* find(VarId v) const;
    Entry* find(VarId v);

    std::string str(const VarTable& vars) const;

private:
    std::vector<Entry> entries_;  // in creation order
};

}  // namespace symbound
